mod common;

use common::{rat, ratio, series_from};
use num_traits::Zero;
use proptest::prelude::*;
use zyklus::series::{lagrange_inversion, Valuation};
use zyklus::PowerSeries;

const N: usize = 12;

fn coeffs(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), len)
}

fn series() -> impl Strategy<Value = PowerSeries> {
    coeffs(N + 1).prop_map(|c| series_from(&c))
}

/// Series with a forced leading zero run of random length.
fn series_with_valuation() -> impl Strategy<Value = PowerSeries> {
    (0usize..5, coeffs(N + 1)).prop_map(|(v, mut c)| {
        for x in c.iter_mut().take(v) {
            x.0 = 0;
        }
        if c[v].0 == 0 {
            c[v].0 = 1;
        }
        series_from(&c)
    })
}

fn unit_series() -> impl Strategy<Value = PowerSeries> {
    coeffs(N + 1).prop_map(|mut c| {
        c[0] = (1, 1);
        series_from(&c)
    })
}

fn order_of(s: &PowerSeries) -> usize {
    match s.valuation() {
        Valuation::Finite(k) => k,
        Valuation::AtLeast(k) => k,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &PowerSeries::one(N), a.clone());
        prop_assert_eq!(&a + &PowerSeries::zero(N), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn valuation_rules(a in series_with_valuation(), b in series_with_valuation()) {
        let (va, vb) = (order_of(&a), order_of(&b));
        let sum = order_of(&(&a + &b));
        prop_assert!(sum >= va.min(vb));
        if va != vb {
            prop_assert_eq!(sum, va.min(vb));
        }
        // products of nonzero leading terms never cancel over ℚ
        let prod = &a * &b;
        if va + vb <= N {
            prop_assert_eq!(prod.valuation(), Valuation::Finite(va + vb));
        } else {
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn invert_is_inverse(a in unit_series(), k in 1i64..5) {
        let a = a.scale(&rat(k));
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, PowerSeries::one(N));
    }

    #[test]
    fn exp_log_round_trip(a in unit_series(), b in series()) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a.clone());
        let mut c = b.coeffs().to_vec();
        c[0] = Zero::zero();
        let b0 = PowerSeries::from_coeffs(c);
        prop_assert_eq!(b0.exp().unwrap().log().unwrap(), b0);
    }

    #[test]
    fn leibniz(a in series(), b in series()) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lagrange_matches_fixpoint(r in unit_series(), k in 1i64..4) {
        let r = r.scale(&ratio(1, k));
        let r = {
            let mut c = r.coeffs().to_vec();
            c[0] = rat(1);
            PowerSeries::from_coeffs(c)
        };
        let lagrange = lagrange_inversion(&r, N).unwrap();
        let x = PowerSeries::x(N);
        let mut a = PowerSeries::zero(N);
        for _ in 0..=N {
            a = &x * &r.compose(&a).unwrap();
        }
        prop_assert_eq!(lagrange, a);
    }
}

#[test]
fn cosh_sinh_identity() {
    let e = PowerSeries::exp_x(N);
    let e_neg = PowerSeries::from_coeffs(
        e.coeffs().iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c }).collect(),
    );
    let half = ratio(1, 2);
    let cosh = (&e + &e_neg).scale(&half);
    let sinh = (&e - &e_neg).scale(&half);
    assert_eq!(&(&cosh * &cosh) - &(&sinh * &sinh), PowerSeries::one(N));
}
