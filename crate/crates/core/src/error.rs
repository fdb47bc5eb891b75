use thiserror::Error;

/// Errors produced by the polynomial and transformation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("recurrence coefficient {name}_{index} is not available")]
    MissingCoefficient { name: &'static str, index: usize },

    #[error("degree {requested} exceeds the coefficient-space limit of {limit}")]
    DegreeLimit { requested: usize, limit: usize },

    #[error("{value} is not a root: residual {residual:e} exceeds tolerance {tolerance:e}")]
    NotARoot {
        value: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate parameters at index {index}: {reason}")]
    DegenerateParameter { index: usize, reason: String },

    #[error("transformation does not exist at index {index}: {reason}")]
    ExistenceViolation { index: usize, reason: String },

    #[error("division by zero: {0}")]
    Division(String),

    #[error("quasi coefficients are not orthogonalizable: residual {residual:e} at n = {index}")]
    NotOrthogonalizable { index: usize, residual: f64 },

    #[error("recurrence degenerates: lambda_{index} = 0")]
    DegenerateRecurrence { index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric failure: {message}")]
    NumericFailure {
        message: String,
        residuals: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn nonzero(value: f64, what: impl FnOnce() -> String) -> Result<f64> {
    if value == 0.0 || !value.is_finite() {
        Err(Error::Division(what()))
    } else {
        Ok(value)
    }
}
