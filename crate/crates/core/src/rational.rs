//! Exact rational scalars and the small amount of integer combinatorics shared
//! by every other module.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p"`, `"-p"` or `"p/q"`. Surrounding whitespace is ignored.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` form, used by every serialized output. Integers keep the
/// explicit `/1` so the format is uniform.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Converts an integral, non-negative rational to a natural number.
pub fn to_natural(r: &Rational) -> Option<BigUint> {
    if r.is_integer() && !r.is_negative() {
        r.numer().to_biguint()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // numer/denom may individually overflow f64 even when the ratio does not
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient `C(r, n)` for rational `r`.
pub fn binomial_rational(r: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc = acc * (r - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

/// Möbius function values `mu[0..=n]` by a linear sieve (`mu[0]` is unused
/// and set to 0).
pub fn mobius_table(n: usize) -> Vec<i64> {
    let mut mu = vec![1i64; n + 1];
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    } else {
        return vec![0];
    }
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            is_composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

/// Euler totient values `phi[0..=n]` by sieve (`phi[0] = 0`).
pub fn totient_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// All integer partitions of `n`, each as multiplicity vector `a` with
/// `a[i-1]` = number of parts equal to `i` (trailing zeros trimmed).
pub fn partitions_as_multiplicities(n: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            let mut v = current.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current[part - 1] += 1;
            rec(remaining - part, part, current, out);
            current[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n.max(1)];
    rec(n, n, &mut current, &mut out);
    out
}
