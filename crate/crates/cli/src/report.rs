use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Value};
use zyklus::rational::format_rational;
use zyklus::{CycleIndex, Monomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// A block of rows with a header, optionally titled.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { title: None, header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    fn render_aligned(&self, out: &mut String) {
        if let Some(t) = &self.title {
            let _ = writeln!(out, "{t}");
        }
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        for r in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (j, cell) in r.iter().enumerate() {
                if j > 0 {
                    line.push_str("  ");
                }
                if j + 1 == cols {
                    line.push_str(cell);
                } else {
                    let _ = write!(line, "{cell:<w$}", w = width[j]);
                }
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
    }

    fn render_csv(&self, out: &mut String) {
        let field = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        for r in std::iter::once(&self.header).chain(&self.rows) {
            let _ = writeln!(out, "{}", r.iter().map(|c| field(c)).collect::<Vec<_>>().join(","));
        }
    }
}

/// Output of one command: the JSON document plus its tabular rendering.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => {
                out = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
                out.push('\n');
            }
            Format::Table | Format::Csv => {
                for (k, t) in self.tables.iter().enumerate() {
                    if k > 0 {
                        out.push('\n');
                    }
                    if format == Format::Table {
                        t.render_aligned(&mut out);
                    } else {
                        t.render_csv(&mut out);
                    }
                }
            }
        }
        out
    }
}

/// An exact natural as a JSON number of any size.
pub fn json_natural(n: &BigUint) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal digits form a JSON number")
}

pub fn json_rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn json_cycle_index(z: &CycleIndex) -> Value {
    Value::Array(
        z.rows()
            .into_iter()
            .map(|(c, exps)| json!({ "coeff": format_rational(&c), "exponents": exps }))
            .collect(),
    )
}

pub fn monomial_text(exps: &[u32]) -> String {
    let m = Monomial::new(exps.to_vec());
    if m.is_one() {
        "1".into()
    } else {
        m.to_string()
    }
}

pub fn cycle_index_table(z: &CycleIndex) -> Table {
    let mut t = Table::new(["coeff", "monomial"]).titled("cycle index");
    for (c, exps) in z.rows() {
        t.row([format_rational(&c), monomial_text(&exps)]);
    }
    t
}

/// Fixed-precision float text without negative zero.
pub fn float(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}
