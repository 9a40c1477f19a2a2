use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::{CycleIndex, Monomial};
use crate::rational::{format_rational, rat, Rational};

/// Cycle index in two sorts of variables, `x_1, x_2, ...` and `t_1, t_2, ...`,
/// with independent weight bounds.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoSortCycleIndex {
    x_bound: usize,
    t_bound: usize,
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl TwoSortCycleIndex {
    pub fn zero(x_bound: usize, t_bound: usize) -> Self {
        TwoSortCycleIndex { x_bound, t_bound, terms: BTreeMap::new() }
    }

    pub fn one(x_bound: usize, t_bound: usize) -> Self {
        let mut z = Self::zero(x_bound, t_bound);
        z.add_term(Monomial::one(), Monomial::one(), rat(1));
        z
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Monomial, Rational)>>(
        x_bound: usize,
        t_bound: usize,
        terms: I,
    ) -> Self {
        let mut z = Self::zero(x_bound, t_bound);
        for (a, b, c) in terms {
            z.add_term(a, b, c);
        }
        z
    }

    /// `Z(x)` with no `t`-dependence.
    pub fn from_x(z: &CycleIndex, t_bound: usize) -> Self {
        Self::from_terms(z.bound(), t_bound, z.terms().map(|(m, c)| (m.clone(), Monomial::one(), c.clone())))
    }

    /// `Z(t)` with no `x`-dependence.
    pub fn from_t(z: &CycleIndex, x_bound: usize) -> Self {
        Self::from_terms(x_bound, z.bound(), z.terms().map(|(m, c)| (Monomial::one(), m.clone(), c.clone())))
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Rational) {
        if a.weight() > self.x_bound || b.weight() > self.t_bound || c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn x_bound(&self) -> usize {
        self.x_bound
    }

    pub fn t_bound(&self) -> usize {
        self.t_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
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

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> Rational {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, x_bound: usize, t_bound: usize) -> Self {
        let xb = self.x_bound.min(x_bound);
        let tb = self.t_bound.min(t_bound);
        Self::from_terms(xb, tb, self.terms().map(|(a, b, c)| (a.clone(), b.clone(), c.clone())))
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        Self::from_terms(self.x_bound, self.t_bound, self.terms().map(|(a, b, c)| (a.clone(), b.clone(), c * lambda)))
    }

    /// `∂/∂x_i`; the x-bound drops by `i`.
    pub fn partial_x(&self, i: usize) -> Self {
        let mut out = Self::zero(self.x_bound.saturating_sub(i), self.t_bound);
        for (a, b, c) in self.terms() {
            if let Some((e, rest)) = a.partial(i) {
                out.add_term(rest, b.clone(), c * rat(e as i64));
            }
        }
        out
    }

    /// `∂/∂t_i`; the t-bound drops by `i`.
    pub fn partial_t(&self, i: usize) -> Self {
        let mut out = Self::zero(self.x_bound, self.t_bound.saturating_sub(i));
        for (a, b, c) in self.terms() {
            if let Some((e, rest)) = b.partial(i) {
                out.add_term(a.clone(), rest, c * rat(e as i64));
            }
        }
        out
    }

    /// Product keeping every term within the given bounds, which may exceed
    /// either factor's own bounds.
    pub fn mul_with_bounds(&self, other: &TwoSortCycleIndex, x_bound: usize, t_bound: usize) -> Self {
        let mut out = TwoSortCycleIndex::zero(x_bound, t_bound);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                if a1.weight() + a2.weight() <= x_bound && b1.weight() + b2.weight() <= t_bound {
                    out.add_term(a1.mul(a2), b1.mul(b2), c1 * c2);
                }
            }
        }
        out
    }

    /// Groups terms by their `t`-monomial: `Σ_b Ω_b(x) t^b`.
    pub fn by_t_monomial(&self) -> BTreeMap<Monomial, CycleIndex> {
        let mut out: BTreeMap<Monomial, CycleIndex> = BTreeMap::new();
        for (a, b, c) in self.terms() {
            out.entry(b.clone())
                .or_insert_with(|| CycleIndex::zero(self.x_bound))
                .add_term(a.clone(), c.clone());
        }
        out
    }

    /// `Z(x_1, x_2, ...; 1, 1, ...)`.
    pub fn at_t_one(&self) -> CycleIndex {
        CycleIndex::from_terms(self.x_bound, self.terms().map(|(a, _, c)| (a.clone(), c.clone())))
    }
}

impl fmt::Debug for TwoSortCycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoSortCycleIndex[x≤{}, t≤{}]({})", self.x_bound, self.t_bound, self)
    }
}

/// Terms as `c * x1^a1 ... t1^b1 ...`.
impl fmt::Display for TwoSortCycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            if !a.is_one() {
                write!(f, " * {a}")?;
            }
            if !b.is_one() {
                let t = b.to_string().replace('x', "t");
                write!(f, "{}{t}", if a.is_one() { " * " } else { " " })?;
            }
        }
        Ok(())
    }
}

impl Add for &TwoSortCycleIndex {
    type Output = TwoSortCycleIndex;
    fn add(self, rhs: &TwoSortCycleIndex) -> TwoSortCycleIndex {
        let mut out = self.truncate(rhs.x_bound, rhs.t_bound);
        for (a, b, c) in rhs.terms() {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TwoSortCycleIndex {
    type Output = TwoSortCycleIndex;
    fn sub(self, rhs: &TwoSortCycleIndex) -> TwoSortCycleIndex {
        let mut out = self.truncate(rhs.x_bound, rhs.t_bound);
        for (a, b, c) in rhs.terms() {
            out.add_term(a.clone(), b.clone(), -c);
        }
        out
    }
}

impl Mul for &TwoSortCycleIndex {
    type Output = TwoSortCycleIndex;
    fn mul(self, rhs: &TwoSortCycleIndex) -> TwoSortCycleIndex {
        let mut out = TwoSortCycleIndex::zero(self.x_bound.min(rhs.x_bound), self.t_bound.min(rhs.t_bound));
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                if a1.weight() + a2.weight() <= out.x_bound && b1.weight() + b2.weight() <= out.t_bound {
                    out.add_term(a1.mul(a2), b1.mul(b2), c1 * c2);
                }
            }
        }
        out
    }
}
