use std::fmt;

use indexmap::IndexMap;

use super::SpeciesError;
use crate::cycleindex::Atom;

/// A species expression. Children are boxed; names are resolved against an
/// [`Environment`] at compile time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpeciesExpr {
    Atom(Atom),
    /// The constant species `n · 1` (n structures on the empty set).
    Const(u64),
    Ref(String),
    Sum(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Difference(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Product(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Cartesian(Box<SpeciesExpr>, Box<SpeciesExpr>),
    /// `outer(inner)`
    Compose(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Derivative(Box<SpeciesExpr>),
    Pointing(Box<SpeciesExpr>),
    Restrict(Box<SpeciesExpr>, usize),
    Connected(Box<SpeciesExpr>),
    Assembly(Box<SpeciesExpr>),
    Inverse(Box<SpeciesExpr>),
}

impl SpeciesExpr {
    pub fn atom(a: Atom) -> Self {
        SpeciesExpr::Atom(a)
    }

    pub fn name(n: &str) -> Self {
        SpeciesExpr::Ref(n.to_string())
    }

    pub fn sum(a: SpeciesExpr, b: SpeciesExpr) -> Self {
        SpeciesExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn difference(a: SpeciesExpr, b: SpeciesExpr) -> Self {
        SpeciesExpr::Difference(Box::new(a), Box::new(b))
    }

    pub fn product(a: SpeciesExpr, b: SpeciesExpr) -> Self {
        SpeciesExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn cartesian(a: SpeciesExpr, b: SpeciesExpr) -> Self {
        SpeciesExpr::Cartesian(Box::new(a), Box::new(b))
    }

    pub fn compose(outer: SpeciesExpr, inner: SpeciesExpr) -> Self {
        SpeciesExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn derivative(a: SpeciesExpr) -> Self {
        SpeciesExpr::Derivative(Box::new(a))
    }

    pub fn pointing(a: SpeciesExpr) -> Self {
        SpeciesExpr::Pointing(Box::new(a))
    }

    pub fn restrict(a: SpeciesExpr, n: usize) -> Self {
        SpeciesExpr::Restrict(Box::new(a), n)
    }

    pub fn connected(a: SpeciesExpr) -> Self {
        SpeciesExpr::Connected(Box::new(a))
    }

    pub fn assembly(a: SpeciesExpr) -> Self {
        SpeciesExpr::Assembly(Box::new(a))
    }

    pub fn inverse(a: SpeciesExpr) -> Self {
        SpeciesExpr::Inverse(Box::new(a))
    }

    /// `a^k` as a product chain; `a^0` is `One`.
    pub fn power(a: SpeciesExpr, k: u32) -> Self {
        if k == 0 {
            return SpeciesExpr::Atom(Atom::One);
        }
        (1..k).fold(a.clone(), |acc, _| SpeciesExpr::product(acc, a.clone()))
    }

    /// Every name referenced, with the number of enclosing derivatives.
    pub(crate) fn refs_with_depth(&self, depth: usize, out: &mut Vec<(String, usize)>) {
        use SpeciesExpr::*;
        match self {
            Atom(_) | Const(_) => {}
            Ref(n) => out.push((n.clone(), depth)),
            Sum(a, b) | Difference(a, b) | Product(a, b) | Cartesian(a, b) | Compose(a, b) => {
                a.refs_with_depth(depth, out);
                b.refs_with_depth(depth, out);
            }
            Derivative(a) => a.refs_with_depth(depth + 1, out),
            Pointing(a) | Restrict(a, _) | Connected(a) | Assembly(a) | Inverse(a) => a.refs_with_depth(depth, out),
        }
    }
}

fn atom_text(a: &Atom) -> String {
    match a {
        Atom::EPlus => "Eplus".into(),
        Atom::LPlus => "Lplus".into(),
        other => other.name(),
    }
}

/// DSL text that parses back to an equal expression (up to `^` desugaring).
impl fmt::Display for SpeciesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpeciesExpr::*;
        match self {
            Atom(a) => write!(f, "{}", atom_text(a)),
            Const(n) => write!(f, "{n}"),
            Ref(n) => write!(f, "{n}"),
            Sum(a, b) => write!(f, "({a} + {b})"),
            Difference(a, b) => write!(f, "({a} - {b})"),
            Product(a, b) => write!(f, "({a} * {b})"),
            Cartesian(a, b) => write!(f, "cart({a}, {b})"),
            Compose(a, b) => match a.as_ref() {
                Atom(_) | Ref(_) => write!(f, "{a}({b})"),
                _ => write!(f, "({a})({b})"),
            },
            Derivative(a) => write!(f, "({a})'"),
            Pointing(a) => write!(f, "point({a})"),
            Restrict(a, n) => write!(f, "restrict({a}, {n})"),
            Connected(a) => write!(f, "conn({a})"),
            Assembly(a) => write!(f, "set({a})"),
            Inverse(a) => write!(f, "inv({a})"),
        }
    }
}

/// Ordered named definitions. A definition may refer to any name, including
/// itself, which makes it an implicit species.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    defs: IndexMap<String, SpeciesExpr>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces a definition. Atom names are reserved.
    pub fn define(&mut self, name: &str, expr: SpeciesExpr) -> Result<(), SpeciesError> {
        if super::parser::atom_from_ident(name).is_some() || super::parser::is_keyword(name) {
            return Err(SpeciesError::ReservedName(name.to_string()));
        }
        self.defs.insert(name.to_string(), expr);
        Ok(())
    }

    pub(crate) fn define_internal(&mut self, name: &str, expr: SpeciesExpr) {
        self.defs.insert(name.to_string(), expr);
    }

    pub fn get(&self, name: &str) -> Option<&SpeciesExpr> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }
}
