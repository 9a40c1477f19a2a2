//! Finite difference calculus on polynomials and constant-coefficient linear
//! recurrences.
//!
//! `Δf(x) = f(x+1) - f(x)`. In the binomial basis `C(x, k)` the operator is a
//! plain index shift, which is what [`newton_expand`], [`newton_reconstruct`]
//! and [`antidifference`] exploit.

mod polynomial;
mod recurrence;

pub use polynomial::Polynomial;
pub use recurrence::{
    ClosedForm, ClosedFormError, ClosedFormTerm, RawRecurrence, Recurrence, RecurrenceError, Tolerances,
};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::rational::{binomial, rat, Rational};

/// `Δ^k p(x) = Σ_{j=0}^{k} (-1)^{k-j} C(k, j) p(x + j)`.
pub fn difference(p: &Polynomial, k: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for j in 0..=k {
        let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
        let c = Rational::from_integer(binomial(k, j) * BigInt::from(sign));
        acc = &acc + &p.shift(&rat(j as i64)).scale(&c);
    }
    acc
}

/// Newton coefficients `[Δ^k p](0)` for `k = 0 ..= deg p`, so that
/// `p(x) = Σ_k [Δ^k p](0) C(x, k)`. The zero polynomial gives `[0]`.
pub fn newton_expand(p: &Polynomial) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return vec![Rational::zero()];
    };
    let mut out = Vec::with_capacity(deg + 1);
    let mut current = p.clone();
    for _ in 0..=deg {
        out.push(current.eval(&Rational::zero()));
        current = &current.shift(&rat(1)) - &current;
    }
    out
}

/// Inverse of [`newton_expand`]: `Σ_k a_k C(x, k)`.
pub fn newton_reconstruct(newton: &[Rational]) -> Polynomial {
    newton
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, a)| &acc + &Polynomial::binomial_basis(k).scale(a))
}

/// The antidifference `P` with `ΔP = p` and `P(0) = 0`, obtained by shifting
/// Newton coefficients up one index.
pub fn antidifference(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    newton_expand(p)
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, a)| &acc + &Polynomial::binomial_basis(k + 1).scale(a))
}

/// Number of surjections `[n] → [k]`:
/// `σ(n, k) = Σ_{j=0}^{k} (-1)^{k-j} C(k, j) j^n` (with `0^0 = 1`).
pub fn surjections(n: usize, k: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k, j) * BigInt::from(j).pow(n as u32);
        if (k - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(!acc.is_negative());
    acc.to_biguint().expect("surjection count is non-negative")
}

/// `σ(n, k)` through `σ(n, k) = k σ(n-1, k-1) + k σ(n-1, k)` with
/// `σ(n, 0) = σ(0, n) = δ_{n,0}`.
pub fn surjections_by_recurrence(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::from(1u32);
    for _ in 1..=n {
        let mut next = vec![BigUint::zero(); k + 1];
        for j in 1..=k {
            next[j] = BigUint::from(j) * (&row[j - 1] + &row[j]);
        }
        row = next;
    }
    row[k].clone()
}

/// `S_r(x) = Σ_{j=0}^{r} σ(r, j) C(x+1, j+1)`, the polynomial with
/// `S_r(n) = Σ_{k=0}^{n} k^r` (and `0^0 = 1`).
pub fn power_sum(r: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for j in 0..=r {
        let s = Rational::from_integer(BigInt::from(surjections(r, j)));
        if s.is_zero() {
            continue;
        }
        let basis = Polynomial::binomial_basis(j + 1).shift(&rat(1));
        acc = &acc + &basis.scale(&s);
    }
    acc
}
