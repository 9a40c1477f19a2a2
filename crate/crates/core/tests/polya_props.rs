mod common;

use std::collections::BTreeSet;

use common::{factorial, integer_partitions, rat};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use zyklus::polya::{
    count_colorings, count_orbits, group_cycle_index, induced_pair_permutation, orbit_partition, pattern_inventory,
    symmetric_cycle_index_formula,
};
use zyklus::{Monomial, PermGroup, Permutation, Rational};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    prop::collection::vec(any::<u32>(), n).prop_map(|keys| {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by_key(|&i| (keys[i], i));
        Permutation::from_images(idx).unwrap()
    })
}

fn group(max_degree: usize) -> impl Strategy<Value = PermGroup> {
    (2..=max_degree).prop_flat_map(|n| {
        prop::collection::vec(permutation(n), 1..=2).prop_map(move |gens| PermGroup::closure(n, &gens).unwrap())
    })
}

/// All `k`-colourings of `n` points, as colour vectors.
fn colourings(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..k.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let c = code % k;
                    code /= k;
                    c
                })
                .collect()
        })
        .collect()
}

/// `(g·c)(g(i)) = c(i)`
#[allow(clippy::ptr_arg)]
fn act(g: &Permutation, c: &Vec<usize>) -> Vec<usize> {
    let mut out = vec![0; c.len()];
    for (i, &colour) in c.iter().enumerate() {
        out[g.apply(i)] = colour;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cycle_index_is_an_average(g in group(7)) {
        prop_assert_eq!(group_cycle_index(&g).evaluate(|_| rat(1)), rat(1));
    }

    #[test]
    fn burnside_matches_orbit_partition(g in group(6), k in 1usize..=3) {
        let points = colourings(g.degree(), k);
        let orbits = orbit_partition(&g, &points, act);
        let burnside = count_orbits(&g, &points, act).unwrap();
        prop_assert_eq!(burnside.clone(), BigUint::from(orbits.len()));
        prop_assert_eq!(burnside, count_colorings(&g, k).unwrap());
    }
}

#[test]
fn burnside_on_points_up_to_degree_8() {
    for n in 1..=8 {
        for spec in ["symmetric", "cyclic", "dihedral", "trivial"] {
            let g = PermGroup::named(&format!("{spec}:{n}")).unwrap();
            let points: Vec<usize> = (0..n).collect();
            let by_orbits = orbit_partition(&g, &points, |p, &i| p.apply(i)).len();
            assert_eq!(count_orbits(&g, &points, |p, &i| p.apply(i)).unwrap(), BigUint::from(by_orbits));
        }
    }
}

#[test]
fn inventory_symmetric_in_colours() {
    for n in 1..=5 {
        for g in [PermGroup::trivial(n), PermGroup::symmetric(n).unwrap()] {
            for k in 1..=3 {
                let inv = pattern_inventory(&g, k).unwrap();
                for (exps, c) in inv.terms() {
                    let mut swapped = exps.clone();
                    swapped.reverse();
                    assert_eq!(&inv.coeff(&swapped), c);
                    let mut rotated = exps.clone();
                    rotated.rotate_left(1);
                    assert_eq!(&inv.coeff(&rotated), c);
                }
            }
        }
    }
}

#[test]
fn pair_action_is_faithful() {
    for n in 3..=6 {
        let g = PermGroup::symmetric(n).unwrap();
        let induced: BTreeSet<Vec<usize>> =
            g.elements().iter().map(|p| induced_pair_permutation(p).images().to_vec()).collect();
        assert_eq!(BigInt::from(induced.len()), factorial(n as u64));
    }
}

#[test]
fn symmetric_formula_coefficients() {
    for n in 1..=7 {
        let z = symmetric_cycle_index_formula(n);
        for parts in integer_partitions(n) {
            let mut exps = vec![0u32; n];
            for &p in &parts {
                exps[p - 1] += 1;
            }
            let aut: BigInt =
                exps.iter().enumerate().map(|(i, &a)| BigInt::from(i + 1).pow(a) * factorial(a as u64)).product();
            assert_eq!(z.coeff(&Monomial::new(exps)), Rational::new(1.into(), aut));
        }
        if n <= 6 {
            assert_eq!(z, group_cycle_index(&PermGroup::symmetric(n).unwrap()));
        }
    }
}
