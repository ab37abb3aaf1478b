use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZeigError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid tensor shape: order {order}, dim {dim}")]
    InvalidShape { order: usize, dim: usize },

    #[error("expected {expected} values, got {got}")]
    InvalidLength { expected: usize, got: usize },

    #[error("negative entry {value} at {location}")]
    NegativeEntry { value: f64, location: String },

    #[error("non-finite entry at {location}")]
    NonFinite { location: String },

    #[error("not a probability vector: {0}")]
    NotProbability(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("degenerate step: {0}")]
    DegenerateStep(String),

    #[error("subset scan unsupported for n = {n} (limit {limit}); use is_weakly_irreducible")]
    UnsupportedSize { n: usize, limit: usize },

    #[error("matrix set block {block}, column {column} sums to zero")]
    ZeroColumn { block: usize, column: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bordered Jacobian is singular")]
    OracleUnavailable,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, ZeigError>;
