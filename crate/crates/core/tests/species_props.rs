use proptest::prelude::*;
use zyklus::species::{compile, counts, parse_expr, parse_program, TREE_PROGRAM};
use zyklus::{Atom, Environment, SpeciesExpr};

const N: usize = 6;

fn leaf(pool: Vec<Atom>) -> impl Strategy<Value = SpeciesExpr> {
    prop::sample::select(pool).prop_map(SpeciesExpr::atom)
}

/// Expressions with zero constant term, usable as the inside of a composition.
fn inner() -> impl Strategy<Value = SpeciesExpr> {
    leaf(vec![Atom::X, Atom::C, Atom::EPlus, Atom::LPlus, Atom::En(2)]).prop_recursive(2, 6, 2, |e| {
        prop_oneof![
            (e.clone(), e.clone()).prop_map(|(a, b)| SpeciesExpr::sum(a, b)),
            (e.clone(), e).prop_map(|(a, b)| SpeciesExpr::product(a, b)),
        ]
    })
}

fn expr() -> impl Strategy<Value = SpeciesExpr> {
    leaf(vec![Atom::X, Atom::E, Atom::C, Atom::L, Atom::S, Atom::En(2), Atom::One]).prop_recursive(2, 6, 2, |e| {
        prop_oneof![
            (e.clone(), e.clone()).prop_map(|(a, b)| SpeciesExpr::sum(a, b)),
            (e.clone(), e.clone()).prop_map(|(a, b)| SpeciesExpr::product(a, b)),
            (e, inner()).prop_map(|(a, b)| SpeciesExpr::compose(a, b)),
        ]
    })
}

fn d(e: &SpeciesExpr) -> SpeciesExpr {
    SpeciesExpr::derivative(e.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derivative_of_sum(f in expr(), g in expr()) {
        let env = Environment::new();
        let lhs = compile(&env, &d(&SpeciesExpr::sum(f.clone(), g.clone())), N).unwrap();
        let rhs = compile(&env, &SpeciesExpr::sum(d(&f), d(&g)), N).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_of_product(f in expr(), g in expr()) {
        let env = Environment::new();
        let lhs = compile(&env, &d(&SpeciesExpr::product(f.clone(), g.clone())), N).unwrap();
        let rhs = SpeciesExpr::sum(SpeciesExpr::product(d(&f), g.clone()), SpeciesExpr::product(f, d(&g)));
        prop_assert_eq!(lhs, compile(&env, &rhs, N).unwrap());
    }

    #[test]
    fn chain_rule(f in expr(), g in inner()) {
        let env = Environment::new();
        let lhs = compile(&env, &d(&SpeciesExpr::compose(f.clone(), g.clone())), N).unwrap();
        let rhs = SpeciesExpr::product(SpeciesExpr::compose(d(&f), g.clone()), d(&g));
        prop_assert_eq!(lhs, compile(&env, &rhs, N).unwrap());
    }

    #[test]
    fn pointing_is_x_times_derivative(f in expr()) {
        let env = Environment::new();
        let lhs = compile(&env, &SpeciesExpr::pointing(f.clone()), N).unwrap();
        let rhs = SpeciesExpr::product(SpeciesExpr::atom(Atom::X), d(&f));
        prop_assert_eq!(lhs, compile(&env, &rhs, N).unwrap());
    }

    #[test]
    fn display_reparses(f in expr()) {
        let env = Environment::new();
        let again = parse_expr(&f.to_string()).unwrap();
        prop_assert_eq!(compile(&env, &again, N).unwrap(), compile(&env, &f, N).unwrap());
    }
}

#[test]
fn dissymmetry() {
    let (env, _) = parse_program(TREE_PROGRAM).unwrap();
    let eval = |src: &str| compile(&env, &parse_expr(src).unwrap(), 10).unwrap();
    assert_eq!(eval("A + E_2(A)"), eval("a + A * A"));
    assert_eq!(eval("O"), eval("o + O * O"));
}

#[test]
fn permutations_are_sets_of_cycles() {
    let env = Environment::new();
    let eval = |src: &str| compile(&env, &parse_expr(src).unwrap(), 8).unwrap();
    assert_eq!(eval("S"), eval("set(C)"));
    assert_eq!(eval("conn(S)"), eval("C"));
}

#[test]
fn sets_times_derangements_are_permutations() {
    let env = Environment::new();
    let lhs = counts(&env, &parse_expr("E * Der").unwrap(), 10).unwrap();
    let rhs = counts(&env, &parse_expr("S").unwrap(), 10).unwrap();
    assert_eq!(lhs, rhs);
}
