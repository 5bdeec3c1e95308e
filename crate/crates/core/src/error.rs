use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand shapes are incompatible with the requested operation.
    #[error("shape error: {0}")]
    Shape(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A decomposition has duplicate or missing factor orders.
    #[error("structure error: {0}")]
    Structure(String),

    /// A documented precondition (typically a non-vanishing divisor) is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A post-condition check failed; `residual` is the offending max-norm defect.
    #[error("internal consistency failure: {what} (residual {residual:e})")]
    Consistency { what: String, residual: f64 },

    /// A linear system could not be solved.
    #[error("unsolvable system: {reason} (residuals {residuals:?})")]
    Unsolvable { reason: String, residuals: Vec<f64> },

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
