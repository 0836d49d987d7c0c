//! Failure classes and their exit codes.

use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input, missing fields, unsupported shapes.
    Validation(anyhow::Error),
    /// The input was well formed but the computation failed.
    Computation(anyhow::Error),
}

impl CliError {
    pub fn validation(msg: impl fmt::Display) -> Self {
        CliError::Validation(anyhow::anyhow!("{msg}"))
    }

    pub fn computation(msg: impl fmt::Display) -> Self {
        CliError::Computation(anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, e) = match self {
            CliError::Validation(e) => ("invalid input", e),
            CliError::Computation(e) => ("computation failed", e),
        };
        write!(f, "{kind}: {e:#}")
    }
}

impl From<deglab::Error> for CliError {
    fn from(e: deglab::Error) -> Self {
        use deglab::Error::*;
        match e {
            DimensionMismatch(_)
            | InvalidInput(_)
            | NonFinite { .. }
            | DegenerateFamily { .. }
            | CollinearDualPoints { .. }
            | Unsupported(_)
            | Parse(_) => CliError::Validation(e.into()),
            Singular(_) | SolverFailure(_) | Inconsistent { .. } | KernelDimension { .. } => {
                CliError::Computation(e.into())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
