use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension for {what}: {value}")]
    InvalidDimension { what: &'static str, value: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("wrong grade: expected {expected}, found {found}")]
    WrongGrade { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("subspace is not spanned by basis vectors: {0}")]
    NotBasisAligned(String),

    #[error("basis subset is not closed under the bracket: [e_{i}, e_{j}] leaves the span")]
    NotClosed { i: usize, j: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid chart point: {0}")]
    InvalidPoint(String),

    #[error("degenerate matrix at {point:?}: |det| = {abs_det:e}")]
    Degenerate { point: Vec<f64>, abs_det: f64 },

    #[error("pole at lambda = {0}")]
    Pole(f64),

    #[error("lambda = {0} is outside the domain |lambda| < 2")]
    OutOfDomain(f64),

    #[error("quadrature did not converge after {nodes} nodes (last estimate {estimate}, error {error:e})")]
    Quadrature {
        nodes: usize,
        estimate: f64,
        error: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
