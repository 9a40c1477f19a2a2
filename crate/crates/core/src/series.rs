//! Truncated formal power series over the rationals.
//!
//! A [`PowerSeries`] of truncation order `N` stores exactly `N + 1`
//! coefficients `c_0 .. c_N` and represents `Σ c_n X^n` modulo `X^{N+1}`.
//! Binary operations truncate to the smaller order of their operands, so every
//! identity checked on these values holds degree by degree up to that order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{binomial_rational, factorial, format_rational, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("rational power requires constant term exactly 1")]
    LeadingCoefficientNotOne,
    #[error("{op} requires constant term {expected}")]
    BadConstantTerm { op: &'static str, expected: i64 },
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("root index must be positive")]
    ZeroRoot,
}

/// Order (valuation) of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(usize),
    /// Every stored coefficient vanishes; the true order is at least this value.
    AtLeast(usize),
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series from `c_0 .. c_N`. An empty vector is read as the zero
    /// series of order 0.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        PowerSeries { coeffs }
    }

    /// Integer coefficients, padded with zeros (or cut) to order `n`.
    pub fn from_ints(values: &[i64], n: usize) -> Self {
        let mut coeffs: Vec<Rational> = values.iter().take(n + 1).map(|&v| rat(v)).collect();
        coeffs.resize(n + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::zero(); n + 1] }
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    pub fn monomial(c: Rational, k: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    /// The variable `X`.
    pub fn x(n: usize) -> Self {
        Self::monomial(Rational::one(), 1, n)
    }

    /// `1 + X + X^2 + ...`
    pub fn geometric(n: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::one(); n + 1] }
    }

    /// `exp(X) = Σ X^n / n!`
    pub fn exp_x(n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|k| Rational::new(BigInt::one(), factorial(k)))
            .collect();
        PowerSeries { coeffs }
    }

    /// `(1 + λX)^r = Σ C(r, n) λ^n X^n` for rational `r`.
    pub fn binomial(lambda: &Rational, r: &Rational, n: usize) -> Self {
        let mut pow = Rational::one();
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            coeffs.push(binomial_rational(r, k) * &pow);
            pow *= lambda;
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `X^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().take(n + 1).cloned().collect();
        coeffs.resize(n + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c * lambda).collect() }
    }

    /// `X^k · self`, keeping the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Valuation::Finite(k),
            None => Valuation::AtLeast(self.order() + 1),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse via `G(0) = 1/F(0)`,
    /// `G(n) = -1/F(0) Σ_{k=1}^{n} F(k) G(n-k)`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = f0.recip();
        let mut g: Vec<Rational> = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * &g[m - k];
            }
            g.push(-(acc * &inv0));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `self^(q/r)` for a series with constant term 1.
    ///
    /// The `r`-th root is built coefficient by coefficient from
    /// `G(n) = (F(n) - [X^n] G_{<n}^r) / r`, where `G_{<n}` is the root
    /// computed so far (so every composition in the sum has parts `< n`).
    pub fn rational_power(&self, q: i64, r: u64) -> Result<Self, SeriesError> {
        if r == 0 {
            return Err(SeriesError::ZeroRoot);
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LeadingCoefficientNotOne);
        }
        let base = if q >= 0 {
            self.pow(q as u64)
        } else {
            self.invert()?.pow(q.unsigned_abs())
        };
        if r == 1 {
            return Ok(base);
        }
        let n = self.order();
        let r_rat = rat(r as i64);
        let mut root = Self::one(n);
        for m in 1..=n {
            let partial = root.truncate(m).pow(r);
            let c = (&base.coeffs[m] - &partial.coeffs[m]) / &r_rat;
            root.coeffs[m] = c;
        }
        Ok(root)
    }

    /// `exp(F) = Σ F^n / n!`, defined for `F(0) = 0`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm { op: "exp", expected: 0 });
        }
        // Horner form 1 + F(1 + F/2(1 + F/3(...))); F^n vanishes past n = N.
        let n = self.order();
        let mut acc = Self::one(n);
        for k in (1..=n).rev() {
            acc = &Self::one(n) + &(self * &acc).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        }
        Ok(acc)
    }

    /// `log(1 + F) = Σ_{n≥1} (-1)^{n+1} F^n / n`, defined for constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm { op: "log", expected: 1 });
        }
        let n = self.order();
        let f = self - &Self::one(n);
        let mut acc = Self::zero(n);
        for k in (1..=n).rev() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let term = Self::constant(Rational::new(BigInt::from(sign), BigInt::from(k)), n);
            acc = &f * &(&term + &acc);
        }
        Ok(acc)
    }

    /// Substitution `self(inner(X))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: c_0 + g(c_1 + g(c_2 + ...))
        let mut acc = Self::zero(n);
        for k in (0..=n).rev() {
            acc = &(&inner * &acc) + &Self::constant(self.coeffs[k].clone(), n);
        }
        Ok(acc)
    }

    /// Formal derivative `DF(n) = (n+1) F(n+1)`. Loses one order of
    /// truncation (an order-0 input yields the zero series of order 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        let coeffs = (0..n).map(|k| &self.coeffs[k + 1] * rat(k as i64 + 1)).collect();
        PowerSeries { coeffs }
    }

    /// Formal antiderivative with zero constant term; gains one order.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat(k as i64 + 1));
        }
        PowerSeries { coeffs }
    }

    /// `n! · c_n` for every stored coefficient (EGF → counting sequence).
    pub fn egf_counts(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * Rational::from_integer(factorial(k)))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

/// Solves `Y' = R(Y)`, `Y(0) = 0` to order `n` through the coefficient
/// recursion `(k+1) y_{k+1} = [x^k] R(Y)`.
pub fn solve_autonomous_ode(r: &PowerSeries, n: usize) -> PowerSeries {
    let r = r.truncate(n);
    let mut y = PowerSeries::zero(n);
    for k in 0..n {
        // [x^k] R(Y) only depends on y_0 .. y_k, all already final.
        let ry = r.compose(&y).expect("Y(0) = 0 by construction");
        y.coeffs[k + 1] = &ry.coeffs[k] / rat(k as i64 + 1);
    }
    y
}

/// Solution `A` of `A = X · R(A)` by Lagrange inversion:
/// `[x^n] A = (1/n) [t^{n-1}] R(t)^n`.
pub fn lagrange_inversion(r: &PowerSeries, n: usize) -> Result<PowerSeries, SeriesError> {
    if r.coeffs[0].is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let r = r.truncate(n);
    let mut a = PowerSeries::zero(n);
    let mut power = PowerSeries::one(n);
    for m in 1..=n {
        power = &power * &r;
        a.coeffs[m] = &power.coeffs[m - 1] / rat(m as i64);
    }
    Ok(a)
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries{:?}", self.to_strings())
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(X^{})", self.order() + 1)
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::from_coeffs(coeffs))
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
