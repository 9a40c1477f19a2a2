use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};
use zyklus::diffops::parse_operator;
use zyklus::polya::{
    count_colorings, graph_enumeration, group_cycle_index, pair_group_cycle_index, pattern_inventory, PairMethod,
};
use zyklus::rational::{format_rational, parse_rational, to_natural};
use zyklus::series::{lagrange_inversion, solve_autonomous_ode, Valuation};
use zyklus::species::{compile, counts_of, parse_expr, parse_program};
use zyklus::{CycleIndex, Environment, PermGroup, PowerSeries, Rational, Recurrence, SpeciesExpr, Tolerances};

use crate::error::CliError;
use crate::report::{cycle_index_table, float, json_cycle_index, json_natural, json_rational, Report, Table};

/// Reads `text` as a file when it names one, otherwise uses it verbatim.
pub fn inline_or_file(text: &str) -> Result<String, CliError> {
    let path = Path::new(text);
    if !text.contains('\n') && path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {text}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CountColumns {
    pub labelled: bool,
    pub unlabelled: bool,
    pub cycle_index: bool,
}

/// Counts table (and optionally the cycle index) for a compiled species.
fn species_report(kind: &str, order: usize, z: &CycleIndex, columns: CountColumns) -> Result<Report, CliError> {
    let counts = counts_of(z)?;
    let both = !columns.labelled && !columns.unlabelled;
    let mut header = vec!["n"];
    if both || columns.labelled {
        header.push("labelled");
    }
    if both || columns.unlabelled {
        header.push("unlabelled");
    }
    let mut table = Table::new(header);
    for n in 0..=order {
        let mut row = vec![n.to_string()];
        if both || columns.labelled {
            row.push(counts.labelled[n].to_string());
        }
        if both || columns.unlabelled {
            row.push(counts.unlabelled[n].to_string());
        }
        table.row(row);
    }
    let mut tables = vec![table];
    if columns.cycle_index {
        tables.push(cycle_index_table(z));
    }
    let json = json!({
        "kind": kind,
        "order": order,
        "labelled": counts.labelled.iter().map(json_natural).collect::<Vec<_>>(),
        "unlabelled": counts.unlabelled.iter().map(json_natural).collect::<Vec<_>>(),
        "cycle_index": json_cycle_index(z),
    });
    Ok(Report { json, tables })
}

/// Environment and target expression from definitions plus an optional target.
fn resolve(defs: &str, target: Option<&str>) -> Result<(Environment, SpeciesExpr), CliError> {
    let (env, tail) = parse_program(&inline_or_file(defs)?)?;
    let expr = match (target, tail) {
        (Some(t), _) => parse_expr(t)?,
        (None, Some(e)) => e,
        (None, None) => match env.names().last() {
            Some(name) => SpeciesExpr::name(name),
            None => return Err(CliError::Usage("no species expression to evaluate".into())),
        },
    };
    Ok((env, expr))
}

pub fn species(defs: &str, target: Option<&str>, order: usize, columns: CountColumns) -> Result<Report, CliError> {
    let (env, expr) = resolve(defs, target)?;
    let z = compile(&env, &expr, order)?;
    species_report("species", order, &z, columns)
}

pub fn diffop(
    op: &str,
    defs: &str,
    target: Option<&str>,
    order: usize,
    nt: usize,
    columns: CountColumns,
) -> Result<Report, CliError> {
    let op = parse_operator(op, order, nt)?;
    let (env, expr) = resolve(defs, target)?;
    let zf = compile(&env, &expr, order + op.nt())?;
    let z = op.apply(&zf)?;
    species_report("diffop", order, &z, columns)
}

fn group_from_spec(spec: &str, degree: Option<usize>) -> Result<PermGroup, CliError> {
    let named = ["symmetric:", "cyclic:", "dihedral:", "trivial:"];
    if named.iter().any(|p| spec.trim().starts_with(p)) {
        Ok(PermGroup::named(spec.trim())?)
    } else {
        Ok(PermGroup::from_generator_list(spec, degree)?)
    }
}

pub fn necklace(n: usize, k: usize, rotations_only: bool, order: usize) -> Result<Report, CliError> {
    let group = if rotations_only { PermGroup::cyclic(n) } else { PermGroup::dihedral(n) };
    let count = count_colorings(&group, k)?;
    let mut t = Table::new(["beads", "colours", "necklaces"]);
    t.row([n.to_string(), k.to_string(), count.to_string()]);
    let json = json!({
        "kind": "necklace",
        "order": order,
        "beads": n,
        "colours": k,
        "group": if rotations_only { "cyclic" } else { "dihedral" },
        "count": json_natural(&count),
    });
    Ok(Report { json, tables: vec![t] })
}

pub fn graphs(n: usize, order: usize, show_cycle_index: bool) -> Result<Report, CliError> {
    let (total, by_edges) = graph_enumeration(n)?;
    let mut totals = Table::new(["vertices", "graphs"]);
    totals.row([n.to_string(), total.to_string()]);
    let mut edges = Table::new(["edges", "graphs"]).titled("by number of edges");
    let by_edges: Vec<BigUint> = by_edges.coeffs().iter().map(|c| to_natural(c).unwrap_or_default()).collect();
    for (k, c) in by_edges.iter().enumerate() {
        edges.row([k.to_string(), c.to_string()]);
    }
    let method = if n >= 3 { PairMethod::Rules } else { PairMethod::Action };
    let z = pair_group_cycle_index(n, method)?;
    let mut tables = vec![totals, edges];
    if show_cycle_index {
        tables.push(cycle_index_table(&z).titled("pair group cycle index"));
    }
    let json = json!({
        "kind": "graphs",
        "order": order,
        "vertices": n,
        "count": json_natural(&total),
        "by_edges": by_edges.iter().map(json_natural).collect::<Vec<_>>(),
        "cycle_index": json_cycle_index(&z),
    });
    Ok(Report { json, tables })
}

pub enum GroupTask {
    Colorings(usize),
    Inventory { k: usize, colours: Option<Vec<String>> },
    CycleIndex,
}

pub fn group(spec: &str, degree: Option<usize>, task: GroupTask, order: usize) -> Result<Report, CliError> {
    let g = group_from_spec(spec, degree)?;
    let base = json!({ "kind": "group", "order": order, "degree": g.degree(), "group_order": g.order() });
    let mut json = base;
    let tables = match task {
        GroupTask::Colorings(k) => {
            let count = count_colorings(&g, k)?;
            json["colours"] = json!(k);
            json["count"] = json_natural(&count);
            let mut t = Table::new(["degree", "group order", "colours", "colourings"]);
            t.row([g.degree().to_string(), g.order().to_string(), k.to_string(), count.to_string()]);
            vec![t]
        }
        GroupTask::Inventory { k, colours } => {
            let names: Vec<String> = match colours {
                Some(c) if c.len() == k => c,
                Some(c) => {
                    return Err(CliError::Usage(format!("{} colour names given for {k} colours", c.len())));
                }
                None => (1..=k).map(|j| format!("c{j}")).collect(),
            };
            let inv = pattern_inventory(&g, k)?;
            let mut header: Vec<String> = names.clone();
            header.push("count".into());
            let mut t = Table::new(header).titled(inv.format_with(&names));
            let mut terms = Vec::new();
            for (exps, c) in inv.terms().collect::<Vec<_>>().into_iter().rev() {
                let mut row: Vec<String> = exps.iter().map(u32::to_string).collect();
                row.push(c.to_string());
                t.row(row);
                terms.push(json!({ "exponents": exps, "count": json_natural(&c.to_biguint().unwrap_or_default()) }));
            }
            json["colours"] = json!(names);
            json["inventory"] = Value::String(inv.format_with(&names));
            json["terms"] = Value::Array(terms);
            vec![t]
        }
        GroupTask::CycleIndex => {
            let z = group_cycle_index(&g);
            json["cycle_index"] = json_cycle_index(&z);
            vec![cycle_index_table(&z)]
        }
    };
    Ok(Report { json, tables })
}

/// Accepts rationals either as JSON strings `"p/q"` or as JSON numbers.
fn recurrence_from_json(text: &str) -> Result<Recurrence, CliError> {
    let text = inline_or_file(text)?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid JSON: {e}")))?;
    for key in ["coeffs", "initials"] {
        match value.get_mut(key).and_then(Value::as_array_mut) {
            Some(items) => {
                for item in items.iter_mut() {
                    if let Value::Number(n) = item {
                        *item = Value::String(n.to_string());
                    }
                }
            }
            None => return Err(CliError::Usage(format!("recurrence JSON needs an array \"{key}\""))),
        }
    }
    let raw: zyklus::finitediff::RawRecurrence =
        serde_json::from_value(value).map_err(|e| CliError::Usage(format!("invalid recurrence: {e}")))?;
    Ok(Recurrence::try_from(raw)?)
}

pub enum RecurrenceTask {
    Terms(usize),
    Gf,
    Closed,
}

pub fn recurrence(input: &str, task: RecurrenceTask, order: usize, tolerance: Option<f64>) -> Result<Report, CliError> {
    let rec = recurrence_from_json(input)?;
    let strings = |v: &[Rational]| v.iter().map(json_rational).collect::<Vec<_>>();
    match task {
        RecurrenceTask::Terms(m) => {
            let terms = rec.terms(m);
            let mut t = Table::new(["n", "f(n)"]);
            for (n, v) in terms.iter().enumerate() {
                t.row([n.to_string(), format_rational(v)]);
            }
            let json = json!({ "kind": "recurrence-terms", "order": order, "terms": strings(&terms) });
            Ok(Report { json, tables: vec![t] })
        }
        RecurrenceTask::Gf => {
            let (num, den) = rec.to_generating_function();
            let width = num.coeffs().len().max(den.coeffs().len());
            let mut t = Table::new(["k", "numerator", "denominator"]);
            for k in 0..width {
                let cell = |p: &zyklus::Polynomial| {
                    if k < p.coeffs().len() {
                        format_rational(&p.coeff(k))
                    } else {
                        String::new()
                    }
                };
                t.row([k.to_string(), cell(&num), cell(&den)]);
            }
            let json = json!({
                "kind": "recurrence-gf",
                "order": order,
                "numerator": strings(num.coeffs()),
                "denominator": strings(den.coeffs()),
            });
            Ok(Report { json, tables: vec![t] })
        }
        RecurrenceTask::Closed => {
            let mut tol = Tolerances::default();
            if let Some(t) = tolerance {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
                }
                tol.root = t;
            }
            let mut cf = rec.closed_form(&tol)?;
            cf.terms.sort_by(|a, b| {
                b.root.re.total_cmp(&a.root.re).then(b.root.im.total_cmp(&a.root.im))
            });
            let mut t = Table::new(["root (re)", "root (im)", "multiplicity", "power of n", "coeff (re)", "coeff (im)"]);
            let mut terms = Vec::new();
            for term in &cf.terms {
                for (j, l) in term.lambda.iter().enumerate() {
                    t.row([
                        float(term.root.re),
                        float(term.root.im),
                        term.multiplicity.to_string(),
                        j.to_string(),
                        float(l.re),
                        float(l.im),
                    ]);
                }
                terms.push(json!({
                    "root": [float(term.root.re), float(term.root.im)],
                    "multiplicity": term.multiplicity,
                    "lambda": term.lambda.iter().map(|l| json!([float(l.re), float(l.im)])).collect::<Vec<_>>(),
                }));
            }
            let json = json!({ "kind": "recurrence-closed", "order": order, "terms": terms });
            Ok(Report { json, tables: vec![t] })
        }
    }
}

/// Parses `c0,c1,...` and pads or truncates to order `n`.
pub fn parse_series(text: &str, n: usize) -> Result<PowerSeries, CliError> {
    let mut coeffs = text
        .split(',')
        .map(|s| parse_rational(s).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    coeffs.resize(n + 1, Rational::default());
    Ok(PowerSeries::from_coeffs(coeffs))
}

pub fn series(op: &str, a: &str, b: Option<&str>, power: Option<&str>, order: usize) -> Result<Report, CliError> {
    let sa = parse_series(a, order)?;
    let second = || -> Result<PowerSeries, CliError> {
        let b = b.ok_or_else(|| CliError::Usage(format!("{op} needs a second series")))?;
        parse_series(b, order)
    };
    let result = match op {
        "add" => &sa + &second()?,
        "sub" => &sa - &second()?,
        "mul" => &sa * &second()?,
        "compose" => sa.compose(&second()?)?,
        "invert" => sa.invert()?,
        "exp" => sa.exp()?,
        "log" => sa.log()?,
        "derivative" => sa.derivative(),
        "integral" => sa.integral(),
        "ode" => solve_autonomous_ode(&sa, order),
        "lagrange" => lagrange_inversion(&sa, order)?,
        "pow" => {
            let p = power.ok_or_else(|| CliError::Usage("pow needs --power q/r".into()))?;
            let r = parse_rational(p).map_err(|e| CliError::Usage(e.to_string()))?;
            let (q, d) = (r.numer().try_into(), r.denom().try_into());
            match (q, d) {
                (Ok(q), Ok(d)) => sa.rational_power(q, d)?,
                _ => return Err(CliError::Domain(format!("power {p} out of range"))),
            }
        }
        "valuation" => {
            let v = match sa.valuation() {
                Valuation::Finite(k) => json!(k),
                Valuation::AtLeast(_) => Value::Null,
            };
            let mut t = Table::new(["valuation"]);
            t.row([if v.is_null() { "infinite".to_string() } else { v.to_string() }]);
            let json = json!({ "kind": "series", "order": order, "operation": op, "valuation": v });
            return Ok(Report { json, tables: vec![t] });
        }
        _ => return Err(CliError::Usage(format!("unknown series operation {op:?}"))),
    };
    let mut t = Table::new(["k", "coeff"]);
    for (k, c) in result.coeffs().iter().enumerate() {
        t.row([k.to_string(), format_rational(c)]);
    }
    let json = json!({
        "kind": "series",
        "order": order,
        "operation": op,
        "coefficients": result.coeffs().iter().map(json_rational).collect::<Vec<_>>(),
    });
    Ok(Report { json, tables: vec![t] })
}
