use thiserror::Error;

/// Errors raised by the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable context mismatch: {0}")]
    ContextMismatch(String),
    #[error("singular matrix: vanishing pivot at column {column}")]
    Singular { column: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("pole order mismatch at {point}: {detail}")]
    PoleOrder { point: String, detail: String },
    #[error("function is unbounded at infinity (numerator degree {num} > denominator degree {den})")]
    UnboundedAtInfinity { num: usize, den: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FieldError>;
