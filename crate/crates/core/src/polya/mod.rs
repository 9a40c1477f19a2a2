//! Permutation groups, Burnside and Pólya counting, the pair group `S_n^{(2)}`
//! and enumeration of unlabelled graphs.

mod group;
mod multipoly;
mod permutation;

pub use group::{PermGroup, MAX_GROUP_ORDER, MAX_SYMMETRIC_DEGREE};
pub use multipoly::MultiPoly;
pub use permutation::Permutation;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cycleindex::{CycleIndex, Monomial};
use crate::finitediff::Polynomial;
use crate::rational::{gcd, lcm, partitions_as_multiplicities, rat, to_natural, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyaError {
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("generator of degree {found} does not match group degree {expected}")]
    NotClosedUnderDegree { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("orbit count {0} is not a natural number")]
    NonIntegerOrbitCount(String),
    #[error("the rules-based pair group needs n >= 3, got {0}")]
    RulesNeedDegreeAtLeast3(usize),
    #[error("number of colours must be at least 1")]
    NoColours,
}

/// `Z(G) = (1/|G|) Σ_g x_1^{λ_1(g)} x_2^{λ_2(g)} ...`, of pure weight `deg G`.
pub fn group_cycle_index(group: &PermGroup) -> CycleIndex {
    let order = Rational::from_integer(BigInt::from(group.order()));
    let mut z = CycleIndex::zero(group.degree());
    for g in group.elements() {
        z.add_term(g.cycle_monomial(), Rational::one() / &order);
    }
    z
}

fn natural(value: Rational) -> Result<BigUint, PolyaError> {
    to_natural(&value).ok_or_else(|| PolyaError::NonIntegerOrbitCount(crate::rational::format_rational(&value)))
}

/// Number of orbits of `group` on `points` under `act`, as the average number
/// of fixed points.
pub fn count_orbits<T, F>(group: &PermGroup, points: &[T], act: F) -> Result<BigUint, PolyaError>
where
    T: PartialEq,
    F: Fn(&Permutation, &T) -> T,
{
    let fixed: usize = group
        .elements()
        .iter()
        .map(|g| points.iter().filter(|p| act(g, p) == **p).count())
        .sum();
    natural(Rational::new(BigInt::from(fixed), BigInt::from(group.order())))
}

/// The orbits themselves, found by closing each point under the group.
pub fn orbit_partition<T, F>(group: &PermGroup, points: &[T], act: F) -> Vec<BTreeSet<T>>
where
    T: Ord + Clone,
    F: Fn(&Permutation, &T) -> T,
{
    let mut seen: BTreeSet<T> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in points {
        if seen.contains(p) {
            continue;
        }
        let orbit: BTreeSet<T> = group.elements().iter().map(|g| act(g, p)).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits
}

/// Colourings of the points with `k` colours up to the group: `Z(G; k, ..., k)`.
pub fn count_colorings(group: &PermGroup, k: usize) -> Result<BigUint, PolyaError> {
    if k == 0 {
        return Err(PolyaError::NoColours);
    }
    natural(group_cycle_index(group).evaluate(|_| rat(k as i64)))
}

/// Pattern inventory `Z(G; Σ_j x_j, Σ_j x_j^2, ...)` in `k` colour variables.
pub fn pattern_inventory(group: &PermGroup, k: usize) -> Result<MultiPoly, PolyaError> {
    pattern_inventory_of(&group_cycle_index(group), k)
}

/// Pattern inventory for any cycle index polynomial with integral result.
pub fn pattern_inventory_of(z: &CycleIndex, k: usize) -> Result<MultiPoly, PolyaError> {
    if k == 0 {
        return Err(PolyaError::NoColours);
    }
    let denom = z.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let power_sum = |i: u32| (0..k).fold(MultiPoly::zero(k), |acc, j| acc.add(&MultiPoly::var_pow(k, j, i)));
    let mut scaled = MultiPoly::zero(k);
    for (m, c) in z.terms() {
        let mut term = MultiPoly::one(k);
        for (idx, &a) in m.exponents().iter().enumerate() {
            if a > 0 {
                term = term.mul(&power_sum(idx as u32 + 1).pow(a));
            }
        }
        let factor = (c * Rational::from_integer(denom.clone())).to_integer();
        let mut weighted = MultiPoly::zero(k);
        for (e, v) in term.terms() {
            weighted.add_term(e.clone(), v * &factor);
        }
        scaled = scaled.add(&weighted);
    }
    let mut out = MultiPoly::zero(k);
    for (e, v) in scaled.terms() {
        let (q, r) = v.div_rem(&denom);
        if !r.is_zero() || q.is_negative() {
            return Err(PolyaError::NonIntegerOrbitCount(format!("{v}/{denom}")));
        }
        out.add_term(e.clone(), q);
    }
    Ok(out)
}

/// How to obtain the cycle index of the pair group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMethod {
    /// Enumerate `S_n` and act on the lexicographically ordered 2-subsets.
    Action,
    /// Map each cycle type of `S_n` to the cycle type it induces on pairs.
    Rules,
}

/// The 2-subsets `{i, j}` (0-based, `i < j`) of `{0, ..., n-1}` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// The permutation induced by `g` on [`pairs`] of its degree.
pub fn induced_pair_permutation(g: &Permutation) -> Permutation {
    let n = g.degree();
    let ps = pairs(n);
    let index = |a: usize, b: usize| {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        // position of (i, j): pairs before row i plus offset within the row
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    };
    let images = ps.iter().map(|&(i, j)| index(g.apply(i), g.apply(j))).collect();
    Permutation::from_images(images).expect("a permutation of points permutes pairs")
}

/// Cycle index of `S_n` acting on 2-subsets of `{1, ..., n}`.
pub fn pair_group_cycle_index(n: usize, method: PairMethod) -> Result<CycleIndex, PolyaError> {
    let bound = n * n.saturating_sub(1) / 2;
    match method {
        PairMethod::Action => {
            let sn = PermGroup::symmetric(n)?;
            let weight = Rational::new(BigInt::one(), BigInt::from(sn.order()));
            let mut z = CycleIndex::zero(bound);
            for g in sn.elements() {
                z.add_term(induced_pair_permutation(g).cycle_monomial(), weight.clone());
            }
            Ok(z)
        }
        PairMethod::Rules => {
            if n < 3 {
                return Err(PolyaError::RulesNeedDegreeAtLeast3(n));
            }
            let mut z = CycleIndex::zero(bound);
            for lambda in partitions_as_multiplicities(n) {
                let m = Monomial::new(lambda.clone());
                z.add_term(pair_cycle_type(&lambda), Rational::new(BigInt::one(), m.aut()));
            }
            Ok(z)
        }
    }
}

/// Cycle type on pairs induced by a permutation with `λ_k` cycles of length `k`.
fn pair_cycle_type(lambda: &[u32]) -> Monomial {
    let mut exps: Vec<u32> = Vec::new();
    let mut bump = |len: usize, count: u32| {
        if count == 0 {
            return;
        }
        if exps.len() < len {
            exps.resize(len, 0);
        }
        exps[len - 1] += count;
    };
    for (idx, &a) in lambda.iter().enumerate() {
        let k = idx + 1;
        if a == 0 {
            continue;
        }
        // pairs inside one k-cycle
        if k % 2 == 1 {
            bump(k, a * (k as u32 - 1) / 2);
        } else {
            bump(k / 2, a);
            bump(k, a * (k as u32 - 2) / 2);
        }
        // pairs across two distinct k-cycles
        bump(k, k as u32 * (a * a.saturating_sub(1) / 2));
        // pairs across a k-cycle and an l-cycle, l > k
        for (jdx, &b) in lambda.iter().enumerate().skip(idx + 1) {
            let l = jdx + 1;
            if b > 0 {
                bump(lcm(k, l), a * b * gcd(k, l) as u32);
            }
        }
    }
    Monomial::new(exps)
}

/// Number of unlabelled graphs on `n` vertices and their distribution by
/// number of edges (`x_i ↦ 1 + x^i` in the pair-group cycle index).
pub fn graph_enumeration(n: usize) -> Result<(BigUint, Polynomial), PolyaError> {
    const MAX: usize = 8;
    if n > MAX {
        return Err(PolyaError::DegreeTooLarge { degree: n, max: MAX });
    }
    let z = if n >= 3 { pair_group_cycle_index(n, PairMethod::Rules)? } else { pair_group_cycle_index(n, PairMethod::Action)? };
    let count = natural(z.evaluate(|_| rat(2)))?;
    let mut dist = Polynomial::zero();
    for (m, c) in z.terms() {
        let mut term = Polynomial::constant(c.clone());
        for (idx, &a) in m.exponents().iter().enumerate() {
            let factor = &Polynomial::one() + &Polynomial::monomial(Rational::one(), idx + 1);
            for _ in 0..a {
                term = &term * &factor;
            }
        }
        dist = &dist + &term;
    }
    Ok((count, dist))
}

/// `Z(S_n) = Σ_{λ ⊢ n} x^λ / Π_i i^{λ_i} λ_i!`.
pub fn symmetric_cycle_index_formula(n: usize) -> CycleIndex {
    let mut z = CycleIndex::zero(n);
    for lambda in partitions_as_multiplicities(n) {
        let m = Monomial::new(lambda);
        let c = Rational::new(BigInt::one(), m.aut());
        z.add_term(m, c);
    }
    z
}
