use thiserror::Error;

/// Errors raised by projectors, operators and the puzzle front ends.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The nearest point is not unique and the set has no selection rule for
    /// this input (e.g. the center of a sphere).
    #[error("ambiguous projection: {0}")]
    AmbiguousProjection(&'static str),

    #[error("scheme needs at least {needed} sets, got {got}")]
    TooFewSets { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inconsistent givens: {0}")]
    InconsistentGivens(String),

    #[error("infeasible line: clusters {clusters:?} do not fit in length {len}")]
    InfeasibleLine { len: usize, clusters: Vec<usize> },

    #[error("line has {count} placements, more than the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
