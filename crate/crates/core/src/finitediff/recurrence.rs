use std::convert::TryFrom;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Polynomial;
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("a recurrence needs at least two coefficients (order d >= 1)")]
    OrderTooSmall,
    #[error("recurrence of order {order} needs {order} initial values, got {got}")]
    InitialCount { order: usize, got: usize },
    #[error("first and last recurrence coefficients must be nonzero")]
    ZeroEndCoefficient,
    #[error(transparent)]
    Parse(#[from] crate::rational::ParseRationalError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("root finding did not converge within {iterations} iterations")]
    RootFindingDiverged { iterations: usize },
    #[error("ill-conditioned system: {0}")]
    IllConditionedSystem(String),
}

/// `c_d f(n+d) + ... + c_1 f(n+1) + c_0 f(n) = 0` with
/// `f(0..d) = v_0 .. v_{d-1}` and `c_0 c_d ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRecurrence", into = "RawRecurrence")]
pub struct Recurrence {
    coeffs: Vec<Rational>,
    initials: Vec<Rational>,
}

/// Wire form: rationals as `"p/q"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawRecurrence {
    pub coeffs: Vec<String>,
    pub initials: Vec<String>,
}

impl TryFrom<RawRecurrence> for Recurrence {
    type Error = RecurrenceError;
    fn try_from(raw: RawRecurrence) -> Result<Self, Self::Error> {
        let coeffs = raw.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
        let initials = raw.initials.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
        Recurrence::new(coeffs, initials)
    }
}

impl From<Recurrence> for RawRecurrence {
    fn from(r: Recurrence) -> Self {
        RawRecurrence {
            coeffs: r.coeffs.iter().map(format_rational).collect(),
            initials: r.initials.iter().map(format_rational).collect(),
        }
    }
}

impl Recurrence {
    pub fn new(coeffs: Vec<Rational>, initials: Vec<Rational>) -> Result<Self, RecurrenceError> {
        if coeffs.len() < 2 {
            return Err(RecurrenceError::OrderTooSmall);
        }
        let order = coeffs.len() - 1;
        if initials.len() != order {
            return Err(RecurrenceError::InitialCount { order, got: initials.len() });
        }
        if coeffs[0].is_zero() || coeffs[order].is_zero() {
            return Err(RecurrenceError::ZeroEndCoefficient);
        }
        Ok(Recurrence { coeffs, initials })
    }

    pub fn from_ints(coeffs: &[i64], initials: &[i64]) -> Result<Self, RecurrenceError> {
        Self::new(
            coeffs.iter().map(|&c| crate::rational::rat(c)).collect(),
            initials.iter().map(|&c| crate::rational::rat(c)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    /// Characteristic polynomial `p_L(x) = Σ c_k x^k`.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    /// First `m` values, from `f(n+d) = -(1/c_d) Σ_{k<d} c_k f(n+k)`.
    pub fn terms(&self, m: usize) -> Vec<Rational> {
        let d = self.order();
        let mut values: Vec<Rational> = self.initials.iter().take(m).cloned().collect();
        let lead = self.coeffs[d].recip();
        while values.len() < m {
            let n = values.len() - d;
            let mut acc = Rational::zero();
            for k in 0..d {
                acc += &self.coeffs[k] * &values[n + k];
            }
            values.push(-(acc * &lead));
        }
        values
    }

    /// Rational generating function `N(X) / D(X)` with
    /// `D(X) = X^d p_L(1/X)` and `deg N < d`.
    pub fn to_generating_function(&self) -> (Polynomial, Polynomial) {
        let d = self.order();
        let denominator = Polynomial::new(self.coeffs.iter().rev().cloned().collect());
        let values = Polynomial::new(self.initials.clone());
        let product = &denominator * &values;
        let numerator = Polynomial::new((0..d).map(|k| product.coeff(k)).collect());
        (numerator, denominator)
    }

    /// Expansion of the generating function to order `n`.
    pub fn generating_series(&self, n: usize) -> PowerSeries {
        let (num, den) = self.to_generating_function();
        let to_series = |p: &Polynomial| PowerSeries::from_coeffs((0..=n).map(|k| p.coeff(k)).collect());
        &to_series(&num) * &to_series(&den).invert().expect("D(0) = c_d != 0")
    }

    /// Closed form `f(n) = Σ λ_i(n) α_i^n` over the distinct roots of the
    /// characteristic polynomial.
    ///
    /// Multiplicities are found exactly by square-free decomposition over ℚ;
    /// the roots of each square-free factor are then located numerically by
    /// simultaneous (Durand–Kerner) iteration.
    pub fn closed_form(&self, tol: &Tolerances) -> Result<ClosedForm, ClosedFormError> {
        let mut roots: Vec<(Complex64, usize)> = Vec::new();
        for (factor, multiplicity) in self.characteristic_polynomial().square_free_decomposition() {
            for root in durand_kerner(&factor, tol)? {
                roots.push((root, multiplicity));
            }
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if (roots[i].0 - roots[j].0).norm() < tol.cluster {
                    return Err(ClosedFormError::IllConditionedSystem(format!(
                        "distinct roots {} and {} closer than {}",
                        roots[i].0, roots[j].0, tol.cluster
                    )));
                }
            }
        }
        // Generalized Vandermonde system: Σ_{j,p} l_{j,p} n^p α_j^n = v_n.
        let d = self.order();
        let mut matrix = vec![vec![Complex64::zero(); d]; d];
        for (n, row) in matrix.iter_mut().enumerate() {
            let mut col = 0;
            for &(alpha, m) in &roots {
                let base = alpha.powu(n as u32);
                for p in 0..m {
                    let np = if p == 0 { 1.0 } else { (n as f64).powi(p as i32) };
                    row[col] = base * np;
                    col += 1;
                }
            }
        }
        let rhs: Vec<Complex64> = self.initials.iter().map(|v| Complex64::new(to_f64(v), 0.0)).collect();
        let solution = solve_dense(matrix, rhs, tol.pivot)?;
        let mut terms = Vec::with_capacity(roots.len());
        let mut it = solution.into_iter();
        for (root, multiplicity) in roots {
            let lambda = it.by_ref().take(multiplicity).collect();
            terms.push(ClosedFormTerm { root, multiplicity, lambda });
        }
        Ok(ClosedForm { terms })
    }
}

/// Numeric knobs for [`Recurrence::closed_form`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Root iteration stops once every update is below this (relative) size.
    pub root: f64,
    /// Distinct roots closer than this are rejected as ill-conditioned.
    pub cluster: f64,
    /// Smallest acceptable relative pivot in the elimination.
    pub pivot: f64,
    pub max_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { root: 1e-12, cluster: 1e-6, pivot: 1e-12, max_iterations: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormTerm {
    pub root: Complex64,
    pub multiplicity: usize,
    /// `λ(n) = Σ_j lambda[j] n^j`
    pub lambda: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub terms: Vec<ClosedFormTerm>,
}

impl ClosedForm {
    pub fn eval(&self, n: usize) -> Complex64 {
        let nf = n as f64;
        self.terms
            .iter()
            .map(|t| {
                let poly = t
                    .lambda
                    .iter()
                    .rev()
                    .fold(Complex64::zero(), |acc, c| acc * nf + c);
                poly * t.root.powu(n as u32)
            })
            .sum()
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }
}

fn durand_kerner(factor: &Polynomial, tol: &Tolerances) -> Result<Vec<Complex64>, ClosedFormError> {
    let monic: Vec<Complex64> = factor
        .monic()
        .coeffs()
        .iter()
        .map(|c| Complex64::new(to_f64(c), 0.0))
        .collect();
    let deg = monic.len() - 1;
    if deg == 1 {
        return Ok(vec![-monic[0]]);
    }
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c);
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * (bound / 2.0)).collect();
    for _ in 0..tol.max_iterations {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::one();
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if !max_step.is_finite() {
            break;
        }
        if max_step < tol.root {
            // Real-coefficient factors: snap numerically real roots onto the axis.
            for r in z.iter_mut() {
                if r.im.abs() < tol.root * r.norm().max(1.0) {
                    r.im = 0.0;
                }
            }
            return Ok(z);
        }
    }
    Err(ClosedFormError::RootFindingDiverged { iterations: tol.max_iterations })
}

fn solve_dense(
    mut a: Vec<Vec<Complex64>>,
    mut b: Vec<Complex64>,
    pivot_tol: f64,
) -> Result<Vec<Complex64>, ClosedFormError> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(|c| c.norm()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let (pivot_row, pivot_norm) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty column");
        if pivot_norm < pivot_tol * scale {
            return Err(ClosedFormError::IllConditionedSystem(format!(
                "pivot {pivot_norm:e} below {pivot_tol:e} relative to matrix scale {scale:e}"
            )));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= factor * v;
            }
            let v = b[col];
            b[r] -= factor * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in r + 1..n {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    Ok(x)
}
