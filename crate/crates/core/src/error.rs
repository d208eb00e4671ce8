use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Hurst index must lie in the open interval (0, 1), got {0}")]
    InvalidHurst(f64),

    #[error("covariance matrix is not symmetric positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("circulant embedding has eigenvalue {min_eigenvalue:e} below tolerance -{tolerance:e}")]
    EmbeddingFailure { min_eigenvalue: f64, tolerance: f64 },

    #[error("Cholesky oracle limited to n <= {cap}, requested n = {n}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("time e^u = {time} lies outside the sampled horizon [{min}, {max}]")]
    OutOfHorizon { time: f64, min: f64, max: f64 },

    #[error("point set has affine dimension {affine_dim}, need {dim}")]
    DegenerateInput { affine_dim: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation not supported in dimension {0}")]
    UnsupportedDimension(usize),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("the direct and reversed endpoint tests disagree")]
    RouteMismatch,
}
