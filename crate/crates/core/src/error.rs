use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index ({i},{j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("operands live over different sizes: n = {left} vs n = {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not anti-alternating")]
    NotAntiAlternating,
    #[error("Pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("dimension {dim} exceeds the {backend} guard of {limit}; {hint}")]
    DimensionGuard {
        dim: usize,
        limit: usize,
        backend: &'static str,
        hint: &'static str,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row},{col}) is not affine in the generators")]
    OutOfSpan { row: usize, col: usize },
    #[error("k = {k} out of range 0..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("entries ({0}) and ({1}) do not commute")]
    NonCommuting(String, String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid JSON value: {0}")]
    Json(String),
    #[error("{0}")]
    Usage(String),
}
