use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("degenerate rank-one family: kernel normals {subset:?} are linearly dependent")]
    DegenerateFamily { subset: Vec<usize> },

    #[error("three dual points {triple:?} are collinear")]
    CollinearDualPoints { triple: [usize; 3] },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("inconsistent linear system (residual {residual:e})")]
    Inconsistent { residual: f64 },

    #[error("unexpected kernel dimension {found} (expected {expected})")]
    KernelDimension { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
