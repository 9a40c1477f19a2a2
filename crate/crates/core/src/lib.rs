//! Exact enumerative combinatorics: truncated power series, finite
//! differences and linear recurrences, cycle index series, Pólya counting,
//! species expressions and combinatorial differential operators.
//!
//! All arithmetic is over ℚ ([`Rational`]); floating point appears only in
//! recurrence closed forms.

#![allow(clippy::needless_range_loop)]

pub mod cycleindex;
pub mod diffops;
pub mod finitediff;
pub mod polya;
pub mod rational;
pub mod series;
pub mod species;

pub use cycleindex::{atom, Atom, CycleIndex, CycleIndexError, Monomial, Specialization, TwoSortCycleIndex};
pub use diffops::{DiffOpError, DiffOperator, OperatorKind, OperatorSpec};
pub use finitediff::{ClosedForm, Polynomial, Recurrence, RecurrenceError, Tolerances};
pub use polya::{MultiPoly, PermGroup, Permutation, PolyaError};
pub use rational::Rational;
pub use series::{PowerSeries, SeriesError};
pub use species::{Counts, Environment, SpeciesError, SpeciesExpr};
