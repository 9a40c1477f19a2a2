//! Truncated cycle index series (Zyklenzeiger) in `x_1, x_2, ...`.
//!
//! A [`CycleIndex`] with weight bound `N` is a sparse map from monomials of
//! weight `≤ N` (where `weight(x_i) = i`) to nonzero rationals. Every
//! operation here is graded, so truncating at a weight is exact: the stored
//! terms of a result agree with the untruncated computation.
//!
//! Coefficients may be negative; virtual species live here as signed series.

mod atoms;
mod monomial;
mod two_sort;

pub use atoms::{atom, Atom};
pub use monomial::Monomial;
pub use two_sort::TwoSortCycleIndex;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{format_rational, mobius_table, rat, Rational};
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleIndexError {
    #[error("cycle index inverse requires constant term 1")]
    NonUnitConstantTerm,
    #[error("inner cycle index of a plethysm must have zero constant term")]
    NonzeroConstantTerm,
    #[error("{op} requires constant term {expected}")]
    BadConstantTerm { op: &'static str, expected: i64 },
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
}

/// Which one-variable series to extract from a cycle index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// `x_1 ↦ x`, `x_i ↦ 0` for `i ≥ 2`: the exponential generating series.
    Egf,
    /// `x_i ↦ x^i`: the type generating series.
    Types,
}

#[derive(Clone, PartialEq, Eq)]
pub struct CycleIndex {
    bound: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl CycleIndex {
    pub fn zero(bound: usize) -> Self {
        CycleIndex { bound, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational, bound: usize) -> Self {
        Self::monomial(c, Monomial::one(), bound)
    }

    pub fn one(bound: usize) -> Self {
        Self::constant(Rational::one(), bound)
    }

    /// `c · m`, dropped if `m` exceeds the bound.
    pub fn monomial(c: Rational, m: Monomial, bound: usize) -> Self {
        let mut z = Self::zero(bound);
        z.add_term(m, c);
        z
    }

    /// The cycle index `x_1` of the singleton species.
    pub fn x1(bound: usize) -> Self {
        Self::monomial(Rational::one(), Monomial::var(1), bound)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(bound: usize, terms: I) -> Self {
        let mut z = Self::zero(bound);
        for (m, c) in terms {
            z.add_term(m, c);
        }
        z
    }

    /// Adds `c · m` in place, respecting the bound and dropping zeros.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.weight() > self.bound || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Smallest weight carrying a nonzero term.
    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::weight)
    }

    /// Largest weight carrying a nonzero term.
    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::weight)
    }

    /// Lowers the bound to `min(bound, n)`.
    pub fn truncate(&self, n: usize) -> Self {
        let bound = self.bound.min(n);
        CycleIndex {
            bound,
            terms: self.terms.iter().filter(|(m, _)| m.weight() <= bound).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Replaces the bound by `n` without touching stored terms beyond
    /// dropping those above `n`. Used for polynomials (finite species), whose
    /// cycle index is exact at every weight.
    pub fn with_bound(&self, n: usize) -> Self {
        CycleIndex {
            bound: n,
            terms: self.terms.iter().filter(|(m, _)| m.weight() <= n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Keeps only the terms of weight exactly `n`.
    pub fn restrict(&self, n: usize) -> Self {
        CycleIndex {
            bound: self.bound,
            terms: self.terms.iter().filter(|(m, _)| m.weight() == n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        if lambda.is_zero() {
            return Self::zero(self.bound);
        }
        CycleIndex { bound: self.bound, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * lambda)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.bound);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Inverse of a series with constant term 1, as `Σ_k (-1)^k G_+^k` with
    /// `G_+ = G - 1`.
    pub fn invert(&self) -> Result<Self, CycleIndexError> {
        if !self.constant_term().is_one() {
            return Err(CycleIndexError::NonUnitConstantTerm);
        }
        let plus = self - &Self::one(self.bound);
        let one = Self::one(self.bound);
        let mut acc = Self::one(self.bound);
        for _ in 0..self.bound {
            acc = &one - &(&plus * &acc);
        }
        Ok(acc)
    }

    /// `exp(H)` for `H` with zero constant term.
    pub fn exp(&self) -> Result<Self, CycleIndexError> {
        if !self.constant_term().is_zero() {
            return Err(CycleIndexError::BadConstantTerm { op: "exp", expected: 0 });
        }
        let one = Self::one(self.bound);
        let mut acc = Self::one(self.bound);
        for k in (1..=self.bound).rev() {
            acc = &one + &(self * &acc).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        }
        Ok(acc)
    }

    /// `log(G)` for `G` with constant term 1.
    pub fn log(&self) -> Result<Self, CycleIndexError> {
        if !self.constant_term().is_one() {
            return Err(CycleIndexError::BadConstantTerm { op: "log", expected: 1 });
        }
        let h = self - &Self::one(self.bound);
        let mut acc = Self::zero(self.bound);
        for k in (1..=self.bound).rev() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = Self::constant(Rational::new(BigInt::from(sign), BigInt::from(k)), self.bound);
            acc = &h * &(&c + &acc);
        }
        Ok(acc)
    }

    /// Substitution `x_i ↦ x_{k·i}`; terms pushed above the bound are dropped.
    pub fn scale_vars(&self, k: usize) -> Self {
        assert!(k >= 1, "scale factor must be positive");
        let mut out = Self::zero(self.bound);
        for (m, c) in &self.terms {
            if m.weight() * k <= self.bound {
                out.terms.insert(m.scale_vars(k), c.clone());
            }
        }
        out
    }

    /// Plethysm `Z_F ∘ Z_G`: every `x_i` of `self` is replaced by
    /// `Z_G(x_i, x_{2i}, x_{3i}, ...)`.
    pub fn plethysm(&self, inner: &CycleIndex) -> Result<Self, CycleIndexError> {
        if !inner.constant_term().is_zero() {
            return Err(CycleIndexError::NonzeroConstantTerm);
        }
        let bound = self.bound.min(inner.bound);
        let inner = inner.truncate(bound);
        let Some(valuation) = inner.min_weight() else {
            return Ok(Self::constant(self.constant_term(), bound));
        };
        let mut powers: HashMap<(usize, u32), CycleIndex> = HashMap::new();
        let mut scaled: HashMap<usize, CycleIndex> = HashMap::new();
        let mut out = Self::zero(bound);
        for (m, c) in &self.terms {
            if m.weight() * valuation > bound {
                continue;
            }
            let mut product = Self::constant(c.clone(), bound);
            for (idx, &a) in m.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let i = idx + 1;
                let factor = power_of_scaled(&inner, i, a, &mut scaled, &mut powers);
                product = &product * factor;
                if product.is_zero() {
                    break;
                }
            }
            out = &out + &product;
        }
        Ok(out)
    }

    /// Hadamard product: for each monomial `m`, `c_F(m) c_G(m) aut(m)`.
    pub fn hadamard(&self, other: &CycleIndex) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = Self::zero(bound);
        for (m, c) in &self.terms {
            if let Some(d) = other.terms.get(m) {
                out.add_term(m.clone(), c * d * Rational::from_integer(m.aut()));
            }
        }
        out
    }

    /// `∂/∂x_i`; the bound drops by `i`.
    pub fn partial(&self, i: usize) -> Self {
        let bound = self.bound.saturating_sub(i);
        let mut out = Self::zero(bound);
        for (m, c) in &self.terms {
            if let Some((a, rest)) = m.partial(i) {
                out.add_term(rest, c * rat(a as i64));
            }
        }
        out
    }

    pub fn d_dx1(&self) -> Self {
        self.partial(1)
    }

    /// `x_1 ∂/∂x_1`, which preserves weight (and the bound).
    pub fn pointing(&self) -> Self {
        let mut out = Self::zero(self.bound);
        for (m, c) in &self.terms {
            let a = m.exponent(1);
            if a > 0 {
                out.add_term(m.clone(), c * rat(a as i64));
            }
        }
        out
    }

    /// `Z_{E(F)} = exp Σ_{k≥1} (1/k) Z_F(x_k, x_{2k}, ...)`.
    pub fn assembly(&self) -> Result<Self, CycleIndexError> {
        if !self.constant_term().is_zero() {
            return Err(CycleIndexError::BadConstantTerm { op: "assembly", expected: 0 });
        }
        let mut h = Self::zero(self.bound);
        for k in 1..=self.bound {
            h = &h + &self.scale_vars(k).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        }
        h.exp()
    }

    /// Connected part: `Σ_{k≥1} (μ(k)/k) log Z_F(x_k, x_{2k}, ...)`, the
    /// inverse of [`assembly`](Self::assembly).
    pub fn connected(&self) -> Result<Self, CycleIndexError> {
        if !self.constant_term().is_one() {
            return Err(CycleIndexError::BadConstantTerm { op: "connected", expected: 1 });
        }
        let log = self.log()?;
        let mu = mobius_table(self.bound.max(1));
        let mut out = Self::zero(self.bound);
        for k in 1..=self.bound {
            if mu[k] == 0 {
                continue;
            }
            out = &out + &log.scale_vars(k).scale(&Rational::new(BigInt::from(mu[k]), BigInt::from(k)));
        }
        Ok(out)
    }

    pub fn specialize(&self, mode: Specialization) -> PowerSeries {
        let mut coeffs = vec![Rational::zero(); self.bound + 1];
        for (m, c) in &self.terms {
            match mode {
                Specialization::Egf => {
                    if m.exponents().len() <= 1 {
                        coeffs[m.weight()] += c;
                    }
                }
                Specialization::Types => coeffs[m.weight()] += c,
            }
        }
        PowerSeries::from_coeffs(coeffs)
    }

    pub fn egf(&self) -> PowerSeries {
        self.specialize(Specialization::Egf)
    }

    pub fn types(&self) -> PowerSeries {
        self.specialize(Specialization::Types)
    }

    /// Evaluates at `x_i = value(i)`.
    pub fn evaluate<F: Fn(usize) -> Rational>(&self, value: F) -> Rational {
        let mut cache: HashMap<usize, Rational> = HashMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &a) in m.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let v = cache.entry(idx + 1).or_insert_with(|| value(idx + 1));
                term *= num_traits::pow(v.clone(), a as usize);
            }
            total += term;
        }
        total
    }

    /// `Z_F(s(x), s(x^2), s(x^3), ...)` for a one-variable series `s` with
    /// zero constant term, truncated to the smaller of the two orders.
    pub fn substitute_series(&self, s: &PowerSeries) -> PowerSeries {
        let n = self.bound.min(s.order());
        let mut scaled: HashMap<usize, PowerSeries> = HashMap::new();
        let mut total = PowerSeries::zero(n);
        for (m, c) in &self.terms {
            let mut term = PowerSeries::constant(c.clone(), n);
            for (idx, &a) in m.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let i = idx + 1;
                let si = scaled.entry(i).or_insert_with(|| {
                    let mut coeffs = vec![Rational::zero(); n + 1];
                    for (k, ck) in s.coeffs().iter().enumerate() {
                        if k * i <= n {
                            coeffs[k * i] = ck.clone();
                        }
                    }
                    PowerSeries::from_coeffs(coeffs)
                });
                term = &term * &si.truncate(n).pow(a as u64);
            }
            total = &total + &term;
        }
        total
    }

    /// `(coefficient, padded exponent vector)` rows in display order.
    pub fn rows(&self) -> Vec<(Rational, Vec<u32>)> {
        let width = self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0);
        self.terms.iter().map(|(m, c)| (c.clone(), m.padded(width))).collect()
    }
}

fn power_of_scaled<'a>(
    inner: &CycleIndex,
    i: usize,
    a: u32,
    scaled: &mut HashMap<usize, CycleIndex>,
    powers: &'a mut HashMap<(usize, u32), CycleIndex>,
) -> &'a CycleIndex {
    if !powers.contains_key(&(i, a)) {
        let base = scaled.entry(i).or_insert_with(|| inner.scale_vars(i)).clone();
        let mut k = (1..a).rev().find(|k| powers.contains_key(&(i, *k))).unwrap_or(0);
        let mut current = if k == 0 { CycleIndex::one(inner.bound) } else { powers[&(i, k)].clone() };
        while k < a {
            current = &current * &base;
            k += 1;
            powers.insert((i, k), current.clone());
        }
    }
    &powers[&(i, a)]
}

impl fmt::Debug for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleIndex[≤{}]({})", self.bound, self)
    }
}

/// Terms as `c * x1^a1 x2^a2 ...` joined by ` + `, in (weight, lex) order.
impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "{} * {}", format_rational(c), m)?;
            }
        }
        Ok(())
    }
}

impl Add for &CycleIndex {
    type Output = CycleIndex;
    fn add(self, rhs: &CycleIndex) -> CycleIndex {
        let bound = self.bound.min(rhs.bound);
        let mut out = self.truncate(bound);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CycleIndex {
    type Output = CycleIndex;
    fn sub(self, rhs: &CycleIndex) -> CycleIndex {
        let bound = self.bound.min(rhs.bound);
        let mut out = self.truncate(bound);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &CycleIndex {
    type Output = CycleIndex;
    fn mul(self, rhs: &CycleIndex) -> CycleIndex {
        let bound = self.bound.min(rhs.bound);
        let mut out = CycleIndex::zero(bound);
        for (ma, ca) in &self.terms {
            if ma.weight() > bound {
                break;
            }
            let room = bound - ma.weight();
            for (mb, cb) in &rhs.terms {
                if mb.weight() > room {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &CycleIndex {
    type Output = CycleIndex;
    fn neg(self) -> CycleIndex {
        CycleIndex { bound: self.bound, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn x(i: usize, a: u32) -> Monomial {
        Monomial::var_pow(i, a)
    }

    #[test]
    fn x_times_x_is_l2() {
        let z = &CycleIndex::x1(5) * &CycleIndex::x1(5);
        assert_eq!(z, CycleIndex::monomial(rat(1), x(1, 2), 5));
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let c = atom(Atom::C, 6);
        assert_eq!(&CycleIndex::one(6) * &c, c);
    }

    #[test]
    fn sets_times_derangements_are_permutations() {
        let n = 8;
        assert_eq!(&atom(Atom::E, n) * &atom(Atom::Der, n), atom(Atom::S, n));
    }

    #[test]
    fn invert_round_trip() {
        let e = atom(Atom::E, 7);
        let inv = e.invert().unwrap();
        assert_eq!(&e * &inv, CycleIndex::one(7));
        assert_eq!(atom(Atom::C, 4).invert(), Err(CycleIndexError::NonUnitConstantTerm));
    }

    #[test]
    fn scale_vars_examples() {
        let z = CycleIndex::x1(6).scale_vars(2);
        assert_eq!(z, CycleIndex::monomial(rat(1), Monomial::var(2), 6));
        // E(x_2, x_4, ...) = exp(Σ x_{2i}/i), term by term
        let n = 6;
        let scaled = atom(Atom::E, n).scale_vars(2);
        let mut expected = CycleIndex::zero(n);
        for (m, c) in atom(Atom::E, n / 2).terms() {
            expected.add_term(m.scale_vars(2), c.clone());
        }
        assert_eq!(scaled, expected);
    }

    #[test]
    fn plethysm_examples() {
        let n = 8;
        assert_eq!(atom(Atom::E, n).plethysm(&atom(Atom::C, n)).unwrap(), atom(Atom::S, n));
        let c = atom(Atom::C, n);
        assert_eq!(c.plethysm(&CycleIndex::x1(n)).unwrap(), c);
        let parts = atom(Atom::E, 6).plethysm(&atom(Atom::EPlus, 6)).unwrap().types();
        assert_eq!(parts, PowerSeries::from_ints(&[1, 1, 2, 3, 5, 7, 11], 6));
        assert_eq!(
            atom(Atom::E, 3).plethysm(&CycleIndex::one(3)),
            Err(CycleIndexError::NonzeroConstantTerm)
        );
    }

    #[test]
    fn hadamard_examples() {
        let n = 8;
        let c = atom(Atom::C, n);
        assert_eq!(atom(Atom::E, n).hadamard(&c), c);
        let l = atom(Atom::L, n);
        assert_eq!(l.hadamard(&l), l.hadamard(&atom(Atom::S, n)));
        assert_eq!(CycleIndex::x1(3).hadamard(&CycleIndex::x1(3)), CycleIndex::x1(3));
    }

    #[test]
    fn derivative_examples() {
        let n = 8;
        assert_eq!(atom(Atom::E, n).d_dx1(), atom(Atom::E, n - 1));
        assert_eq!(atom(Atom::C, n).d_dx1(), atom(Atom::L, n - 1));
        assert!(CycleIndex::one(4).pointing().is_zero());
        let l = atom(Atom::L, n);
        assert_eq!(l.pointing().truncate(n - 1), &CycleIndex::x1(n) * &l.d_dx1());
    }

    #[test]
    fn assembly_and_connected() {
        let n = 8;
        assert_eq!(atom(Atom::S, n).connected().unwrap(), atom(Atom::C, n));
        assert_eq!(atom(Atom::E, n).connected().unwrap(), CycleIndex::x1(n));
        let c = atom(Atom::S, n).connected().unwrap();
        assert_eq!(c.assembly().unwrap(), atom(Atom::S, n));
        assert!(matches!(atom(Atom::E, 3).assembly(), Err(CycleIndexError::BadConstantTerm { .. })));
    }

    #[test]
    fn specializations() {
        let n = 5;
        let s = atom(Atom::S, n);
        assert_eq!(s.types(), PowerSeries::from_ints(&[1, 1, 2, 3, 5, 7], n));
        assert_eq!(s.egf(), PowerSeries::geometric(n));
        assert_eq!(CycleIndex::x1(n).types(), PowerSeries::x(n));
    }

    #[test]
    fn display_format() {
        let z = CycleIndex::from_terms(3, [(x(1, 2), ratio(1, 2)), (Monomial::var(2), ratio(1, 2)), (Monomial::one(), rat(1))]);
        assert_eq!(z.to_string(), "1/1 + 1/2 * x2^1 + 1/2 * x1^2");
    }

    #[test]
    fn evaluation() {
        let s4_like = CycleIndex::from_terms(4, [(x(1, 4), ratio(1, 24)), (x(4, 1), ratio(1, 4))]);
        assert_eq!(s4_like.evaluate(|_| rat(2)), ratio(16, 24) + ratio(1, 2));
    }
}
