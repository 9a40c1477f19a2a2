//! Species expressions compiled to cycle indices: a small DSL, implicit
//! (recursive) definitions, virtual differences and the tree families.

mod compile;
mod expr;
mod parser;

pub use compile::{compile, compile_many, solve_implicit};
pub use expr::{Environment, SpeciesExpr};
pub use parser::{parse_expr, parse_program};

use indexmap::IndexMap;
use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::cycleindex::{Atom, CycleIndex, CycleIndexError};
use crate::rational::{factorial, format_rational, to_natural, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpeciesError {
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("{0:?} is reserved")]
    ReservedName(String),
    #[error("implicit definition of {0} does not converge")]
    NonContractiveSystem(String),
    #[error(transparent)]
    CycleIndex(#[from] CycleIndexError),
    #[error("R' has zero constant term, so R-enriched trees are not defined")]
    DerivativeVanishesAtZero,
    #[error("{kind} count at n = {index} is {value}, not a natural number")]
    NegativeOrFractionalCount { kind: &'static str, index: usize, value: String },
}

/// Labelled and unlabelled structure counts for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub labelled: Vec<BigUint>,
    pub unlabelled: Vec<BigUint>,
}

/// `labelled[n] = n! [x^n] egf`, `unlabelled[n] = [x^n] types`; both must be
/// natural numbers.
pub fn counts_of(z: &CycleIndex) -> Result<Counts, SpeciesError> {
    let check = |kind: &'static str, index: usize, value: Rational| {
        to_natural(&value).ok_or_else(|| SpeciesError::NegativeOrFractionalCount {
            kind,
            index,
            value: format_rational(&value),
        })
    };
    let egf = z.egf();
    let types = z.types();
    let mut labelled = Vec::with_capacity(z.bound() + 1);
    let mut unlabelled = Vec::with_capacity(z.bound() + 1);
    for k in 0..=z.bound() {
        labelled.push(check("labelled", k, egf.coeff(k) * Rational::from_integer(factorial(k)))?);
        unlabelled.push(check("unlabelled", k, types.coeff(k))?);
    }
    Ok(Counts { labelled, unlabelled })
}

pub fn counts(env: &Environment, expr: &SpeciesExpr, n: usize) -> Result<Counts, SpeciesError> {
    counts_of(&compile(env, expr, n)?)
}

/// Definitions of the tree families: rooted trees `A`, trees `a`, ordered
/// rooted trees `O` with their unrooted counterpart `o`, and homeomorphically
/// irreducible rooted `H` and unrooted `h` trees.
pub const TREE_PROGRAM: &str = "\
A = X * E(A);
a = A + E_2(A) - A^2;
O = X * E(O) * E(O);
o = O - O^2;
H = X * E(H) - X * H;
h = X * (E - E_2)(H) + E_2(H) - H^2;
";

/// Cycle indices of `A, a, O, o, H, h` to weight `n`, in that order.
pub fn tree_suite(n: usize) -> Result<IndexMap<String, CycleIndex>, SpeciesError> {
    let (env, _) = parse_program(TREE_PROGRAM)?;
    let names = ["A", "a", "O", "o", "H", "h"];
    let exprs: Vec<SpeciesExpr> = names.iter().map(|k| SpeciesExpr::name(k)).collect();
    let values = compile_many(&env, &exprs, n)?;
    Ok(names.iter().map(|k| k.to_string()).zip(values).collect())
}

/// Rooted and unrooted `R`-enriched trees: `A = X·R'(A)` and
/// `X·R(A) + E_2(A) - A^2`.
pub fn enriched_trees(env: &Environment, r: &SpeciesExpr, n: usize) -> Result<(CycleIndex, CycleIndex), SpeciesError> {
    let derivative = SpeciesExpr::derivative(r.clone());
    if compile(env, &derivative, 0)?.constant_term().is_zero() {
        return Err(SpeciesError::DerivativeVanishesAtZero);
    }
    // Internal names cannot be written in the DSL, so they never clash.
    let (rd, a) = ("#R'", "#A");
    let mut env = env.clone();
    env.define_internal(rd, derivative);
    env.define_internal(
        a,
        SpeciesExpr::product(SpeciesExpr::atom(Atom::X), SpeciesExpr::compose(SpeciesExpr::name(rd), SpeciesExpr::name(a))),
    );
    let rooted = solve_implicit(&env, a, n)?;
    let tree = SpeciesExpr::difference(
        SpeciesExpr::sum(
            SpeciesExpr::product(SpeciesExpr::atom(Atom::X), SpeciesExpr::compose(r.clone(), SpeciesExpr::name(a))),
            SpeciesExpr::compose(SpeciesExpr::atom(Atom::En(2)), SpeciesExpr::name(a)),
        ),
        SpeciesExpr::power(SpeciesExpr::name(a), 2),
    );
    let unrooted = compile(&env, &tree, n)?;
    Ok((rooted, unrooted))
}
