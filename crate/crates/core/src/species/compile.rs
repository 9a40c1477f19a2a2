use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Environment, SpeciesError, SpeciesExpr};
use crate::cycleindex::{atom, CycleIndex};
use crate::rational::Rational;

/// Cycle index of `expr` to weight `n`, resolving names in `env`.
///
/// Names are solved one strongly connected component at a time, dependencies
/// first. A recursive component is solved by iterating its definitions from
/// the zero cycle index, one round per weight, and must then be stable under
/// one more round.
pub fn compile(env: &Environment, expr: &SpeciesExpr, n: usize) -> Result<CycleIndex, SpeciesError> {
    Ok(compile_many(env, std::slice::from_ref(expr), n)?.pop().unwrap())
}

/// Compiles several expressions against one environment, solving shared
/// names only once.
pub fn compile_many(env: &Environment, exprs: &[SpeciesExpr], n: usize) -> Result<Vec<CycleIndex>, SpeciesError> {
    let mut needs: HashMap<String, usize> = HashMap::new();
    for e in exprs {
        for (name, b) in required_bounds(env, e, n)? {
            let entry = needs.entry(name).or_insert(b);
            *entry = (*entry).max(b);
        }
    }
    let values = solve_names(env, &needs)?;
    exprs.iter().map(|e| eval(e, n, &values)).collect()
}

/// The fixpoint of the definition of `name`, to weight `n`.
pub fn solve_implicit(env: &Environment, name: &str, n: usize) -> Result<CycleIndex, SpeciesError> {
    compile(env, &SpeciesExpr::name(name), n)
}

fn refs(expr: &SpeciesExpr) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    expr.refs_with_depth(0, &mut out);
    out
}

/// Weight bound each reachable name must be computed to. A derivative needs
/// its operand one weight higher, so a name seen under `k` derivatives needs
/// `n + k`. A dependency cycle through a derivative has no finite answer.
fn required_bounds(env: &Environment, expr: &SpeciesExpr, n: usize) -> Result<HashMap<String, usize>, SpeciesError> {
    let mut needs: HashMap<String, usize> = HashMap::new();
    let mut stack: Vec<(String, usize)> = refs(expr).into_iter().map(|(r, d)| (r, n + d)).collect();
    let mut relaxations = 0usize;
    let limit = (env.len() + 1) * (env.len() + 1) + 16;
    while let Some((name, bound)) = stack.pop() {
        let body = env.get(&name).ok_or_else(|| SpeciesError::UnknownName(name.clone()))?;
        if needs.get(&name).is_some_and(|&b| b >= bound) {
            continue;
        }
        needs.insert(name.clone(), bound);
        relaxations += 1;
        if relaxations > limit {
            return Err(SpeciesError::NonContractiveSystem(format!(
                "{name} depends on its own derivative"
            )));
        }
        for (r, d) in refs(body) {
            stack.push((r, bound + d));
        }
    }
    Ok(needs)
}

/// Tarjan's algorithm; components come out dependencies-first.
fn components(env: &Environment, names: &[String]) -> Vec<Vec<String>> {
    struct State<'a> {
        env: &'a Environment,
        index: HashMap<String, usize>,
        low: HashMap<String, usize>,
        on_stack: HashMap<String, bool>,
        stack: Vec<String>,
        next: usize,
        out: Vec<Vec<String>>,
    }
    fn visit(s: &mut State, v: &str) {
        s.index.insert(v.to_string(), s.next);
        s.low.insert(v.to_string(), s.next);
        s.next += 1;
        s.stack.push(v.to_string());
        s.on_stack.insert(v.to_string(), true);
        let succ: Vec<String> = s.env.get(v).map(refs).unwrap_or_default().into_iter().map(|(r, _)| r).collect();
        for w in succ {
            if !s.index.contains_key(&w) {
                visit(s, &w);
                let lw = s.low[&w];
                let lv = s.low.get_mut(v).unwrap();
                *lv = (*lv).min(lw);
            } else if s.on_stack.get(&w).copied().unwrap_or(false) {
                let iw = s.index[&w];
                let lv = s.low.get_mut(v).unwrap();
                *lv = (*lv).min(iw);
            }
        }
        if s.low[v] == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack.insert(w.clone(), false);
                let done = w == v;
                comp.push(w);
                if done {
                    break;
                }
            }
            s.out.push(comp);
        }
    }
    let mut state = State {
        env,
        index: HashMap::new(),
        low: HashMap::new(),
        on_stack: HashMap::new(),
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for name in names {
        if !state.index.contains_key(name) {
            visit(&mut state, name);
        }
    }
    state.out
}

fn solve_names(env: &Environment, needs: &HashMap<String, usize>) -> Result<HashMap<String, CycleIndex>, SpeciesError> {
    let mut names: Vec<String> = needs.keys().cloned().collect();
    names.sort();
    let mut values: HashMap<String, CycleIndex> = HashMap::new();
    for comp in components(env, &names) {
        let recursive = comp.len() > 1 || refs(env.get(&comp[0]).unwrap()).iter().any(|(r, _)| *r == comp[0]);
        if !recursive {
            let name = &comp[0];
            let v = eval(env.get(name).unwrap(), needs[name], &values)?;
            values.insert(name.clone(), v);
            continue;
        }
        // Round r works to weight r below the final bound, so each round is
        // exact one weight further than the last for a contractive system.
        let top = comp.iter().map(|c| needs[c]).max().unwrap_or(0);
        for name in &comp {
            values.insert(name.clone(), CycleIndex::zero(0));
        }
        let step = |values: &HashMap<String, CycleIndex>, lag: usize| -> Result<Vec<(String, CycleIndex)>, SpeciesError> {
            comp.iter()
                .map(|name| Ok((name.clone(), eval(env.get(name).unwrap(), needs[name].saturating_sub(lag), values)?)))
                .collect()
        };
        for r in 0..=top {
            for (name, v) in step(&values, top - r)? {
                values.insert(name, v);
            }
        }
        for (name, v) in step(&values, 0)? {
            if values[&name] != v {
                return Err(SpeciesError::NonContractiveSystem(name));
            }
        }
    }
    Ok(values)
}

fn eval(expr: &SpeciesExpr, n: usize, values: &HashMap<String, CycleIndex>) -> Result<CycleIndex, SpeciesError> {
    use SpeciesExpr::*;
    Ok(match expr {
        Atom(a) => atom(*a, n),
        Const(c) => CycleIndex::constant(Rational::from_integer(BigInt::from(*c)), n),
        Ref(name) => {
            let v = values.get(name).ok_or_else(|| SpeciesError::UnknownName(name.clone()))?;
            // an earlier iterate stored to a lower weight counts as zero above it
            if v.bound() >= n {
                v.truncate(n)
            } else {
                v.with_bound(n)
            }
        }
        Sum(a, b) => &eval(a, n, values)? + &eval(b, n, values)?,
        Difference(a, b) => &eval(a, n, values)? - &eval(b, n, values)?,
        Product(a, b) => &eval(a, n, values)? * &eval(b, n, values)?,
        Cartesian(a, b) => eval(a, n, values)?.hadamard(&eval(b, n, values)?),
        Compose(outer, inner) => eval(outer, n, values)?.plethysm(&eval(inner, n, values)?)?,
        Derivative(a) => eval(a, n + 1, values)?.d_dx1(),
        Pointing(a) => eval(a, n, values)?.pointing(),
        Restrict(a, k) => eval(a, n, values)?.restrict(*k),
        Connected(a) => eval(a, n, values)?.connected()?,
        Assembly(a) => eval(a, n, values)?.assembly()?,
        Inverse(a) => eval(a, n, values)?.invert()?,
    })
}
