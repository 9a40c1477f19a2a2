use std::process::ExitCode;

use thiserror::Error;
use zyklus::finitediff::ClosedFormError;
use zyklus::{CycleIndexError, DiffOpError, PolyaError, RecurrenceError, SeriesError, SpeciesError};

/// Failures grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: exit status 2.
    #[error("{0}")]
    Usage(String),
    /// Well-formed input that violates a precondition: exit status 3.
    #[error("{0}")]
    Domain(String),
    /// Floating-point procedure failed: exit status 4.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Numeric(_) => 4,
        })
    }
}

impl From<SpeciesError> for CliError {
    fn from(e: SpeciesError) -> Self {
        match e {
            SpeciesError::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<PolyaError> for CliError {
    fn from(e: PolyaError) -> Self {
        match e {
            PolyaError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ClosedFormError> for CliError {
    fn from(e: ClosedFormError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<DiffOpError> for CliError {
    fn from(e: DiffOpError) -> Self {
        match e {
            DiffOpError::UnknownOperator(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CycleIndexError> for CliError {
    fn from(e: CycleIndexError) -> Self {
        CliError::Domain(e.to_string())
    }
}
