use thiserror::Error;

use crate::einsum::EinsumError;

/// Errors raised by tensor construction and the numeric operations built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("component count mismatch: expected {expected} components, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dense storage limit exceeded: {dim}^{rank} components")]
    TooLarge { dim: usize, rank: usize },

    #[error("shape mismatch in {attribute}: {left} vs {right}")]
    Shape {
        attribute: &'static str,
        left: String,
        right: String,
    },

    #[error("index {index:?} is out of range for {what}")]
    Addressing { index: Vec<usize>, what: String },

    #[error("index convention violated: {0}")]
    Convention(String),

    #[error("singular matrix: |det| = {det:e}")]
    Singular { det: f64 },

    #[error("metric is not positive definite: leading minor {order} = {minor:e}")]
    NotPositiveDefinite { order: usize, minor: f64 },

    #[error("metric is not symmetric: |g[{row}][{col}] - g[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("superluminal velocity: |beta| = {0} must be < 1")]
    Superluminal(f64),

    #[error("matrix does not preserve the Minkowski product (deviation {0:e})")]
    NotLorentz(f64),

    #[error("operation requires dimension {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
}

impl TensorError {
    pub(crate) fn shape(attribute: &'static str, left: impl ToString, right: impl ToString) -> Self {
        TensorError::Shape {
            attribute,
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    /// True for failures caused by ill-conditioned or out-of-domain numbers
    /// rather than malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            TensorError::Singular { .. }
                | TensorError::NotPositiveDefinite { .. }
                | TensorError::Superluminal(_)
                | TensorError::NotLorentz(_)
        )
    }
}

/// Errors raised while reading or writing JSON documents.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("document field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Top-level error used by the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Tensor(#[from] TensorError),

    #[error(transparent)]
    Einsum(#[from] EinsumError),

    #[error(transparent)]
    Document(#[from] DocumentError),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::Tensor(e) => e.is_numeric(),
            Error::Document(DocumentError::Tensor(e)) => e.is_numeric(),
            Error::Einsum(EinsumError::Tensor(e)) => e.is_numeric(),
            _ => false,
        }
    }
}

pub type Result<T, E = TensorError> = std::result::Result<T, E>;
