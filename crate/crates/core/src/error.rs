use thiserror::Error;

/// Errors raised by the statistics, solvers and simulation harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimensions n={n}, p={p}: need n >= 3 and p >= 2")]
    InvalidDimensions { n: usize, p: usize },

    #[error("data has {got} values, expected n*p = {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },

    /// A column (0-based index) with zero sample variance.
    #[error("column {column} is constant; its correlation is undefined")]
    DegenerateColumn { column: usize },

    #[error("input vectors have lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("mu = {mu} is not strictly inside the hull ({min}, {max})")]
    HullViolation { mu: f64, min: f64, max: f64 },

    #[error("degenerate sample: {0}")]
    Degenerate(&'static str),

    #[error("alpha = {0} must lie in (0, 0.5)")]
    InvalidAlpha(f64),

    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },

    #[error("{0} did not converge")]
    NonConvergence(&'static str),

    #[error("empty simulation grid")]
    EmptyGrid,

    #[error("{} replicate(s) failed; first at index {}: {}", .0.len(), .0[0].index, .0[0].error)]
    Replicates(Vec<ReplicateFailure>),
}

/// A single failed Monte Carlo replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateFailure {
    pub index: u32,
    pub error: Error,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
