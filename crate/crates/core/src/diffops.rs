//! Combinatorial differential operators `Ω(X, D)` acting on cycle indices.
//!
//! An operator is stored as its two-sort cycle index `Z_Ω(x; t)` with x-weight
//! at most `Nx` and t-weight at most `Nt`. Applying it substitutes
//! `t_i ↦ i ∂/∂x_i`:
//!
//! ```text
//! Z_G = Σ_{a,b} c(a, b) x^a Π_i (i ∂/∂x_i)^{b_i} Z_F
//! ```
//!
//! Truncation contract: the input must be valid to weight `Nx + Nt` and the
//! result is valid to weight `Nx`. Operators whose `t`-part is an infinite
//! series (the shift `E(D)`, the difference `E_+(D)`) are cut at `Nt`, so they
//! are exact only on inputs of weight at most `Nt`, such as `L_n` or `E_n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::cycleindex::{atom, Atom, CycleIndex, CycleIndexError, Monomial, TwoSortCycleIndex};
use crate::rational::{factorial, rat, Rational};
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffOpError {
    #[error("input valid to weight {got}, but the operator needs weight {needed}")]
    InsufficientTruncation { needed: usize, got: usize },
    #[error("unknown operator {0:?}")]
    UnknownOperator(String),
    #[error(transparent)]
    CycleIndex(#[from] CycleIndexError),
}

/// The operator families that can be built by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorKind {
    /// `Φ(D)`: the cycle index of `Φ` placed on the `t` variables.
    Hammond(CycleIndex),
    /// `Φ(D)` for an atom `Φ`, expanded to weight `Nt`.
    HammondAtom(Atom),
    /// `φ(X) ψ(D)`.
    Times(CycleIndex, CycleIndex),
    /// `X^n D^n`.
    XdPower(u32),
    /// `D^k`.
    DPower(u32),
    /// `E(D)`: `F(X) ↦ F(X + 1)`.
    Shift,
    /// `E_+(D)`: `F(X) ↦ F(X + 1) - F(X)`.
    Delta,
    Identity,
    /// `D = X(D)`, the derivative.
    D,
}

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    omega: TwoSortCycleIndex,
}

impl DiffOperator {
    /// Wraps an explicit `Z_Ω`.
    pub fn from_cycle_index(omega: TwoSortCycleIndex) -> Self {
        DiffOperator { omega }
    }

    pub fn omega(&self) -> &TwoSortCycleIndex {
        &self.omega
    }

    pub fn nx(&self) -> usize {
        self.omega.x_bound()
    }

    pub fn nt(&self) -> usize {
        self.omega.t_bound()
    }

    /// `Z_{Φ(D)} = Z_Φ(t)`.
    pub fn hammond(phi: &CycleIndex, nx: usize, nt: usize) -> Self {
        Self::from_cycle_index(TwoSortCycleIndex::from_t(&phi.truncate(nt), nx))
    }

    pub fn times(phi_x: &CycleIndex, psi_t: &CycleIndex, nx: usize, nt: usize) -> Self {
        let x = TwoSortCycleIndex::from_x(&phi_x.truncate(nx), nt);
        let t = TwoSortCycleIndex::from_t(&psi_t.truncate(nt), nx);
        Self::from_cycle_index(x.mul_with_bounds(&t, nx, nt))
    }

    pub fn identity(nx: usize, nt: usize) -> Self {
        Self::hammond(&CycleIndex::one(nt), nx, nt)
    }

    /// `x_1^n t_1^n`.
    pub fn xd_power(n: u32, nx: usize, nt: usize) -> Self {
        let m = Monomial::var_pow(1, n);
        Self::from_cycle_index(TwoSortCycleIndex::from_terms(nx, nt, [(m.clone(), m, Rational::one())]))
    }

    /// `t_1^k`.
    pub fn d_power(k: u32, nx: usize, nt: usize) -> Self {
        Self::hammond(&CycleIndex::monomial(Rational::one(), Monomial::var_pow(1, k), nt), nx, nt)
    }

    pub fn make(kind: &OperatorKind, nx: usize, nt: usize) -> Self {
        match kind {
            OperatorKind::Hammond(phi) => Self::hammond(phi, nx, nt),
            OperatorKind::HammondAtom(a) => Self::hammond(&atom(*a, nt), nx, nt),
            OperatorKind::Times(phi, psi) => Self::times(phi, psi, nx, nt),
            OperatorKind::XdPower(n) => Self::xd_power(*n, nx, nt),
            OperatorKind::DPower(k) => Self::d_power(*k, nx, nt),
            OperatorKind::Shift => Self::hammond(&atom(Atom::E, nt), nx, nt),
            OperatorKind::Delta => Self::hammond(&atom(Atom::EPlus, nt), nx, nt),
            OperatorKind::Identity => Self::identity(nx, nt),
            OperatorKind::D => Self::d_power(1, nx, nt),
        }
    }

    /// `Z_G` to weight `Nx`. Requires `zf` valid to weight `Nx + Nt`.
    pub fn apply(&self, zf: &CycleIndex) -> Result<CycleIndex, DiffOpError> {
        let needed = self.nx() + self.nt();
        if zf.bound() < needed {
            return Err(DiffOpError::InsufficientTruncation { needed, got: zf.bound() });
        }
        let zf = zf.truncate(needed);
        let mut derivatives = Derivatives::new(zf, |z: &CycleIndex, i| z.partial(i).scale(&rat(i as i64)));
        let mut out = CycleIndex::zero(self.nx());
        for (b, omega_b) in self.omega.by_t_monomial() {
            let d = derivatives.get(&b);
            out = &out + &(&omega_b * d).truncate(self.nx());
        }
        Ok(out)
    }

    /// The EGF of `Z_G` through the EGF-level formula
    /// `G(x) = Σ_n ω_n(x, 0, ...) [∂^n / n! Z_F](x, 0, ...)`, where
    /// `ω_n = aut(n) · [t^n] Z_Ω`.
    pub fn apply_egf(&self, zf: &CycleIndex) -> Result<PowerSeries, DiffOpError> {
        let needed = self.nx() + self.nt();
        if zf.bound() < needed {
            return Err(DiffOpError::InsufficientTruncation { needed, got: zf.bound() });
        }
        let zf = zf.truncate(needed);
        let mut derivatives = Derivatives::new(zf, |z: &CycleIndex, i| z.partial(i));
        let mut out = PowerSeries::zero(self.nx());
        for (b, omega_b) in self.omega.by_t_monomial() {
            let omega_n = omega_b.scale(&Rational::from_integer(b.aut())).egf();
            let d = derivatives.get(&b).egf().scale(&Rational::new(BigInt::one(), b.factorials()));
            out = &out + &(&omega_n * &d).truncate(self.nx());
        }
        Ok(out)
    }

    /// `Ω_2 ⊙ Ω_1`, the operator with `(Ω_2 ⊙ Ω_1) F = Ω_2 (Ω_1 F)`:
    /// `Σ_n [Π (i ∂_{x_i})^{n_i} Z_{Ω_1}] [Π (i ∂_{t_i})^{n_i} Z_{Ω_2}] / aut(n)`.
    ///
    /// Needs `Nx(Ω_1) ≥ Nx(Ω_2) + Nt(Ω_2)`; the result has x-bound `Nx(Ω_2)`
    /// and t-bound `Nt(Ω_1) + Nt(Ω_2)`.
    pub fn compose(o2: &DiffOperator, o1: &DiffOperator) -> Result<DiffOperator, DiffOpError> {
        let needed = o2.nx() + o2.nt();
        if o1.nx() < needed {
            return Err(DiffOpError::InsufficientTruncation { needed, got: o1.nx() });
        }
        let (xb, tb) = (o2.nx(), o1.nt() + o2.nt());
        let mut indices: BTreeSet<Monomial> = BTreeSet::new();
        for (_, b, _) in o2.omega.terms() {
            divisors(b, &mut indices);
        }
        let mut out = TwoSortCycleIndex::zero(xb, tb);
        for n in indices {
            let mut a = o1.omega.clone();
            let mut c = o2.omega.clone();
            for (idx, &k) in n.exponents().iter().enumerate() {
                let i = idx + 1;
                for _ in 0..k {
                    a = a.partial_x(i).scale(&rat(i as i64));
                    c = c.partial_t(i).scale(&rat(i as i64));
                }
            }
            let term = a.mul_with_bounds(&c, xb, tb).scale(&Rational::new(BigInt::one(), n.aut()));
            out = &out + &term;
        }
        Ok(DiffOperator { omega: out })
    }
}

/// All monomials dividing `m`.
fn divisors(m: &Monomial, out: &mut BTreeSet<Monomial>) {
    let exps = m.exponents();
    let mut current = vec![0u32; exps.len()];
    loop {
        out.insert(Monomial::new(current.clone()));
        let mut k = 0;
        while k < exps.len() && current[k] == exps[k] {
            current[k] = 0;
            k += 1;
        }
        if k == exps.len() {
            return;
        }
        current[k] += 1;
    }
}

/// Memoised iterated derivatives `Π_i δ_i^{b_i} Z` for a given one-step `δ_i`.
struct Derivatives<F: Fn(&CycleIndex, usize) -> CycleIndex> {
    cache: HashMap<Monomial, CycleIndex>,
    step: F,
}

impl<F: Fn(&CycleIndex, usize) -> CycleIndex> Derivatives<F> {
    fn new(z: CycleIndex, step: F) -> Self {
        Derivatives { cache: HashMap::from([(Monomial::one(), z)]), step }
    }

    fn get(&mut self, b: &Monomial) -> &CycleIndex {
        if !self.cache.contains_key(b) {
            let i = b.exponents().iter().position(|&e| e > 0).expect("nonconstant monomial") + 1;
            let (_, rest) = b.partial(i).unwrap();
            let base = self.get(&rest).clone();
            let d = (self.step)(&base, i);
            self.cache.insert(b.clone(), d);
        }
        &self.cache[b]
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({:?})", self.omega)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.omega)
    }
}

/// An operator named as on the command line: `d`, `d^k`, `shift`, `delta`,
/// `xd`, `xd^k`, `id` or `hammond:<atom>`, optionally followed by `@Nt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub nt: Option<usize>,
}

impl OperatorSpec {
    /// Builds the operator; `nt` falls back to `default_nt`.
    pub fn build(&self, nx: usize, default_nt: usize) -> DiffOperator {
        DiffOperator::make(&self.kind, nx, self.nt.unwrap_or(default_nt))
    }
}

impl FromStr for OperatorSpec {
    type Err = DiffOpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiffOpError::UnknownOperator(s.to_string());
        let (body, nt) = match s.split_once('@') {
            Some((b, n)) => (b.trim(), Some(n.trim().parse::<usize>().map_err(|_| bad())?)),
            None => (s.trim(), None),
        };
        let power = |prefix: &str| -> Option<Result<u32, DiffOpError>> {
            let rest = body.strip_prefix(prefix)?;
            if rest.is_empty() {
                return Some(Ok(1));
            }
            Some(rest.strip_prefix('^').and_then(|k| k.parse().ok()).ok_or_else(bad))
        };
        let kind = if let Some(name) = body.strip_prefix("hammond:") {
            OperatorKind::HammondAtom(name.trim().parse().map_err(|_| bad())?)
        } else {
            match body {
                "shift" => OperatorKind::Shift,
                "delta" => OperatorKind::Delta,
                "id" | "identity" => OperatorKind::Identity,
                _ => {
                    if let Some(k) = power("xd") {
                        OperatorKind::XdPower(k?)
                    } else if let Some(k) = power("d") {
                        OperatorKind::DPower(k?)
                    } else {
                        return Err(bad());
                    }
                }
            }
        };
        Ok(OperatorSpec { kind, nt })
    }
}

/// Parses an operator name and builds it.
pub fn parse_operator(s: &str, nx: usize, default_nt: usize) -> Result<DiffOperator, DiffOpError> {
    Ok(s.parse::<OperatorSpec>()?.build(nx, default_nt))
}

/// `x_1^n` as a cycle index valid to weight `bound`.
pub fn x1_power(n: u32, bound: usize) -> CycleIndex {
    CycleIndex::monomial(Rational::one(), Monomial::var_pow(1, n), bound)
}

/// `Z_F` with every `x_i` replaced by `x_i + 1`, by direct binomial expansion
/// of each monomial. Independent of the operator machinery.
pub fn taylor_shift(zf: &CycleIndex) -> CycleIndex {
    let mut out = CycleIndex::zero(zf.bound());
    for (m, c) in zf.terms() {
        // Π_i (x_i + 1)^{a_i} = Σ_{j ≤ a} Π_i C(a_i, j_i) x_i^{j_i}
        let exps = m.exponents();
        let mut j = vec![0u32; exps.len()];
        loop {
            let coeff = exps.iter().zip(&j).fold(c.clone(), |acc, (&a, &ji)| {
                acc * Rational::from_integer(factorial(a as usize) / (factorial(ji as usize) * factorial((a - ji) as usize)))
            });
            out.add_term(Monomial::new(j.clone()), coeff);
            let mut k = 0;
            while k < exps.len() && j[k] == exps[k] {
                j[k] = 0;
                k += 1;
            }
            if k == exps.len() {
                break;
            }
            j[k] += 1;
        }
    }
    out
}
