use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn zyklus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zyklus")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = zyklus(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn column(v: &Value, key: &str) -> Vec<u64> {
    v[key].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

/// Rooted unlabelled trees on `n` vertices by canonical forms of all parent
/// arrays with `parent[i] < i`.
fn rooted_trees(n: usize) -> u64 {
    fn canon(children: &[Vec<usize>], v: usize) -> String {
        let mut parts: Vec<String> = children[v].iter().map(|&c| canon(children, c)).collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    fn go(parent: &mut Vec<usize>, n: usize, forms: &mut BTreeSet<String>) {
        if parent.len() == n {
            let mut children = vec![Vec::new(); n];
            for (i, &p) in parent.iter().enumerate().skip(1) {
                children[p].push(i);
            }
            forms.insert(canon(&children, 0));
            return;
        }
        for p in 0..parent.len() {
            parent.push(p);
            go(parent, n, forms);
            parent.pop();
        }
    }
    if n == 0 {
        return 0;
    }
    let mut forms = BTreeSet::new();
    go(&mut vec![0], n, &mut forms);
    forms.len() as u64
}

#[test]
fn rooted_trees_unlabelled() {
    let v = json(&["species", "A = X*set(A);", "A", "--order", "7", "--unlabelled"]);
    let got = column(&v, "unlabelled");
    assert_eq!(got[1..], [1, 1, 2, 4, 9, 20, 48]);
    for (n, &c) in got.iter().enumerate() {
        assert_eq!(c, rooted_trees(n), "n = {n}");
    }
    let table = stdout(&["species", "A = X*set(A);", "A", "--order", "7", "--unlabelled"]);
    assert_eq!(table.lines().next().unwrap(), "n  unlabelled");
    assert_eq!(table.lines().last().unwrap(), "7  48");
}

#[test]
fn permutations_and_zero() {
    let v = json(&["species", "S", "--order", "5", "--labelled"]);
    assert_eq!(column(&v, "labelled"), [1, 1, 2, 6, 24, 120]);
    let v = json(&["species", "Zero", "--order", "3"]);
    assert_eq!(column(&v, "labelled"), [0, 0, 0, 0]);
    assert_eq!(column(&v, "unlabelled"), [0, 0, 0, 0]);
    assert_eq!(v["cycle_index"], Value::Array(vec![]));
}

#[test]
fn species_from_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("trees.species");
    std::fs::write(&path, "# rooted trees\nA = X * E(A);\na = A + E_2(A) - A^2;\n").unwrap();
    let v = json(&["species", path.to_str().unwrap(), "-n", "6"]);
    assert_eq!(column(&v, "labelled")[1..], [1, 1, 3, 16, 125, 1296]);
}

#[test]
fn necklaces_graphs_groups() {
    assert_eq!(json(&["polya", "necklace", "6", "2"])["count"], 13);
    let g = json(&["polya", "graphs", "4"]);
    assert_eq!(g["count"], 11);
    assert_eq!(column(&g, "by_edges"), [1, 1, 2, 3, 2, 1, 1]);
    assert_eq!(json(&["polya", "group", "()", "--degree", "1", "colorings", "5"])["count"], 5);
    let inv = json(&["polya", "group", "dihedral:6", "inventory", "2", "--colors", "b,w"]);
    assert_eq!(inv["inventory"], "b^6 + b^5 w + 3 b^4 w^2 + 3 b^3 w^3 + 3 b^2 w^4 + b w^5 + w^6");
    let gens = json(&["polya", "group", "(1 2 3 4 5 6), (1 6)(2 5)(3 4)", "colorings", "2"]);
    assert_eq!(gens["group_order"], 12);
    assert_eq!(gens["count"], 13);
}

const FIBONACCI: &str = r#"{"coeffs": [-1, -1, 1], "initials": [1, 1]}"#;

#[test]
fn fibonacci() {
    let closed = json(&["recurrence", FIBONACCI, "closed"]);
    let terms = closed["terms"].as_array().unwrap();
    let num = |v: &Value| v.as_str().unwrap().parse::<f64>().unwrap();
    let sqrt5 = 5f64.sqrt();
    let (phi, psi) = ((1.0 + sqrt5) / 2.0, (1.0 - sqrt5) / 2.0);
    let expected = [(phi, phi / sqrt5), (psi, -psi / sqrt5)];
    assert_eq!(terms.len(), 2);
    for (t, (root, coeff)) in terms.iter().zip(expected) {
        assert!((num(&t["root"][0]) - root).abs() < 1e-9);
        assert!(num(&t["root"][1]).abs() < 1e-9);
        assert!((num(&t["lambda"][0][0]) - coeff).abs() < 1e-9);
    }
    let gf = json(&["recurrence", FIBONACCI, "gf"]);
    assert_eq!(gf["numerator"], serde_json::json!(["1/1"]));
    assert_eq!(gf["denominator"], serde_json::json!(["1/1", "-1/1", "-1/1"]));
    let first = json(&["recurrence", r#"{"coeffs": ["3/2", "-7", "1"], "initials": ["5/3", "2"]}"#, "terms", "1"]);
    assert_eq!(first["terms"], serde_json::json!(["5/3"]));
}

#[test]
fn operators_and_series() {
    let v = json(&["diffop", "delta", "E_3", "-n", "4"]);
    assert_eq!(column(&v, "labelled"), [1, 1, 1, 0, 0]);
    // X^2 D^2 L: an ordered pair of marked points plus a list on all n points
    let v = json(&["diffop", "xd^2", "L", "-n", "5"]);
    let expected: Vec<u64> = (0..=5u64).map(|n| n * n.saturating_sub(1) * (1..=n).product::<u64>()).collect();
    assert_eq!(column(&v, "labelled"), expected);
    let s = json(&["series", "ode", "1,1,1/2,1/6,1/24,1/120,1/720", "-n", "6"]);
    let expected: Vec<String> = (0..=6).map(|k| if k == 0 { "0/1".into() } else { format!("1/{k}") }).collect();
    assert_eq!(s["coefficients"], serde_json::json!(expected));
    let v = json(&["series", "valuation", "0,0,3"]);
    assert_eq!(v["valuation"], 2);
    let p = json(&["series", "pow", "1,1", "--power", "-1/2", "-n", "3"]);
    assert_eq!(p["coefficients"], serde_json::json!(["1/1", "-1/2", "3/8", "-5/16"]));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| zyklus(args).status.code().unwrap();
    assert_eq!(code(&["species", "A = X*"]), 2);
    assert_eq!(code(&["species", "S", "--format", "yaml"]), 2);
    assert_eq!(code(&["polya", "group", "(1 2", "colorings", "2"]), 2);
    assert_eq!(code(&["recurrence", "not json", "gf"]), 2);
    assert_eq!(code(&["species", "A = A';", "A"]), 3);
    assert_eq!(code(&["species", "inv(E) - E"]), 3);
    assert_eq!(code(&["recurrence", r#"{"coeffs": [0, 1], "initials": [1]}"#, "gf"]), 3);
    assert_eq!(code(&["polya", "group", "symmetric:9", "colorings", "2"]), 3);
    let near_double =
        r#"{"coeffs": ["1000000001/1000000000", "-2000000001/1000000000", "1"], "initials": [1, 2]}"#;
    assert_eq!(code(&["recurrence", near_double, "closed"]), 4);
}

#[test]
fn json_round_trips_and_output_is_deterministic() {
    for args in [
        &["species", "A = X*E(A); a = A + E_2(A) - A^2;", "a", "--format", "json"][..],
        &["polya", "graphs", "5", "--format", "json"],
        &["recurrence", FIBONACCI, "gf", "--format", "json"],
        &["series", "lagrange", "1,1,1", "--format", "json"],
    ] {
        let first = stdout(args);
        assert_eq!(first, stdout(args));
        let value: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", first);
    }
    let csv = stdout(&["species", "C", "-n", "4", "--format", "csv"]);
    assert_eq!(csv, "n,labelled,unlabelled\n0,0,0\n1,1,1\n2,1,1\n3,2,1\n4,6,1\n");
}
