use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::factorial;

/// A monomial `x_1^{a_1} x_2^{a_2} ...` in the cycle-index variables, stored
/// as its exponent vector with trailing zeros trimmed. `weight = Σ i·a_i`.
///
/// Ordering is by weight first, then lexicographic on exponents; that is the
/// order used for printing and it lets products stop early on the weight bound.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
    weight: usize,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// The variable `x_i` (`i >= 1`).
    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, a: u32) -> Self {
        assert!(i >= 1, "cycle-index variables are numbered from 1");
        let mut exps = vec![0; i];
        exps[i - 1] = a;
        Self::new(exps)
    }

    /// From `[a_1, a_2, ...]`.
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let weight = exps.iter().enumerate().map(|(i, &a)| (i + 1) * a as usize).sum();
        Monomial { exps, weight }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i`.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps.get(i - 1).copied().unwrap_or(0)
    }

    /// Exponent vector padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.exps.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree `Σ a_i`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() { (self, other) } else { (other, self) };
        let mut exps = long.exps.clone();
        for (e, s) in exps.iter_mut().zip(&short.exps) {
            *e += s;
        }
        Monomial { exps, weight: self.weight + other.weight }
    }

    /// `x_i ↦ x_{k·i}`.
    pub fn scale_vars(&self, k: usize) -> Monomial {
        if self.is_one() {
            return self.clone();
        }
        let mut exps = vec![0; self.exps.len() * k];
        for (i, &a) in self.exps.iter().enumerate() {
            exps[(i + 1) * k - 1] = a;
        }
        Monomial { exps, weight: self.weight * k }
    }

    /// `∂/∂x_i` of the monomial: `(a_i, x^{a - e_i})`, or `None` when `a_i = 0`.
    pub fn partial(&self, i: usize) -> Option<(u32, Monomial)> {
        let a = self.exponent(i);
        if a == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i - 1] -= 1;
        Some((a, Monomial::new(exps)))
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(&other.exps) {
            *e = e.checked_sub(*o)?;
        }
        Some(Monomial::new(exps))
    }

    /// `aut = Π i^{a_i} a_i!`, the size of the centralizer of a permutation of
    /// this cycle type.
    pub fn aut(&self) -> BigInt {
        self.exps.iter().enumerate().fold(BigInt::one(), |acc, (i, &a)| {
            acc * BigInt::from(i + 1).pow(a) * factorial(a as usize)
        })
    }

    /// `Π i^{a_i}` (without the factorials).
    pub fn index_power(&self) -> BigInt {
        self.exps
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (i, &a)| acc * BigInt::from(i + 1).pow(a))
    }

    /// `Π a_i!`
    pub fn factorials(&self) -> BigInt {
        self.exps.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.cmp(&other.weight).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "x{}^{}", i + 1, a)?;
        }
        Ok(())
    }
}
