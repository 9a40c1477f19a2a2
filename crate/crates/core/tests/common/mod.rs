//! Brute-force oracles shared by the integration tests. Everything here
//! enumerates structures directly and shares no code with the library's
//! algorithms beyond basic types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use zyklus::{CycleIndex, Monomial, Polynomial, PowerSeries, Rational};

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Every permutation of `0..n` as an image vector.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Cycle-type monomial of a permutation given by images.
pub fn cycle_type(p: &[usize]) -> Monomial {
    let mut exps = vec![0u32; p.len()];
    for l in cycle_lengths(p) {
        exps[l - 1] += 1;
    }
    Monomial::new(exps)
}

/// Number of set partitions of an `n`-set, by restricted growth strings.
pub fn set_partition_count(n: usize) -> u64 {
    fn go(pos: usize, n: usize, max: usize) -> u64 {
        if pos == n {
            return 1;
        }
        (0..=max + 1).map(|b| go(pos + 1, n, max.max(b))).sum()
    }
    if n == 0 {
        1
    } else {
        go(1, n, 0)
    }
}

/// All partitions of `n` as nonincreasing part lists.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Surjections `[n] → [k]` by enumerating all `k^n` functions.
pub fn surjections_brute(n: usize, k: usize) -> u64 {
    let total = (k as u64).pow(n as u32);
    let mut count = 0;
    for code in 0..total {
        let mut hit = vec![false; k];
        let mut c = code;
        for _ in 0..n {
            hit[(c % k as u64) as usize] = true;
            c /= k as u64;
        }
        if hit.iter().all(|&h| h) {
            count += 1;
        }
    }
    count
}

/// Fixed-point-free permutations of `n` points.
pub fn derangements_brute(n: usize) -> u64 {
    all_permutations(n).iter().filter(|p| p.iter().enumerate().all(|(i, &j)| i != j)).count() as u64
}

/// Canonical string of the rooted tree below `v` (sorted children).
fn canonical(children: &[Vec<usize>], v: usize) -> String {
    let mut parts: Vec<String> = children[v].iter().map(|&c| canonical(children, c)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Non-isomorphic rooted trees on `n` vertices, from all parent arrays with
/// `parent[i] < i` (every rooted tree has such a labelling).
pub fn rooted_tree_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut forms = BTreeSet::new();
    let mut parent = vec![0usize; n];
    loop {
        let mut children = vec![Vec::new(); n];
        for i in 1..n {
            children[parent[i]].push(i);
        }
        forms.insert(canonical(&children, 0));
        // odometer over parent[i] ∈ 0..i
        let mut i = n - 1;
        loop {
            if i == 0 {
                return forms.len();
            }
            if parent[i] + 1 < i {
                parent[i] += 1;
                break;
            }
            parent[i] = 0;
            i -= 1;
        }
    }
}

/// Labelled trees on `n` vertices: edge sets of size `n - 1` that connect `K_n`.
pub fn labelled_tree_count(n: usize) -> u64 {
    if n <= 1 {
        return n as u64;
    }
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut count = 0;
    let mut choice: Vec<usize> = (0..n - 1).collect();
    loop {
        let mut root: Vec<usize> = (0..n).collect();
        fn find(r: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while r[x] != x {
                r[x] = r[r[x]];
                x = r[x];
            }
            x
        }
        let mut ok = true;
        for &e in &choice {
            let (a, b) = edges[e];
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra == rb {
                ok = false;
                break;
            }
            root[ra] = rb;
        }
        if ok {
            count += 1;
        }
        // next combination
        let k = choice.len();
        let mut i = k;
        while i > 0 && choice[i - 1] == edges.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return count;
        }
        choice[i - 1] += 1;
        for j in i..k {
            choice[j] = choice[j - 1] + 1;
        }
    }
}

/// The weight-`n` part of `Z_C` by averaging, over all `σ ∈ S_n`, the number
/// of cyclic permutations fixed by conjugation with `σ`.
pub fn cycles_cycle_index_by_averaging(n: usize) -> CycleIndex {
    let perms = all_permutations(n);
    let cyclic: Vec<&Vec<usize>> = perms.iter().filter(|p| cycle_lengths(p) == vec![n]).collect();
    let mut z = CycleIndex::zero(n);
    let weight = Rational::new(BigInt::one(), factorial(n as u64));
    for sigma in &perms {
        let inv = {
            let mut v = vec![0; n];
            for (i, &j) in sigma.iter().enumerate() {
                v[j] = i;
            }
            v
        };
        let fixed = cyclic.iter().filter(|c| compose(&compose(sigma, c), &inv) == ***c).count();
        if fixed > 0 {
            z.add_term(cycle_type(sigma), &weight * rat(fixed as i64));
        }
    }
    z
}

/// `Σ_{i=0}^{n} (-1)^i n!/i!`
pub fn derangement_formula(n: u64) -> BigInt {
    (0..=n).fold(BigInt::zero(), |acc, i| {
        let term = factorial(n) / factorial(i);
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Evaluates a polynomial given by its coefficient list.
pub fn eval_poly(p: &Polynomial, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for c in p.coeffs() {
        acc += c * &power;
        power *= x;
    }
    acc
}

/// Series with small random integer-over-small-denominator coefficients.
pub fn series_from(values: &[(i64, i64)]) -> PowerSeries {
    PowerSeries::from_coeffs(values.iter().map(|&(p, q)| ratio(p, q)).collect())
}
