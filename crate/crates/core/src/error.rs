use thiserror::Error;

/// Errors produced by the border basis toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("invalid marking: {0}")]
    InvalidMarking(String),

    #[error("strategy error: {0}")]
    Strategy(String),

    #[error("precondition violated: {0}")]
    Contract(String),

    #[error("ideal is not zero-dimensional: no pure power of variable {variable} among the leading terms")]
    NotZeroDimensional { variable: usize },

    #[error("not an order-ideal border prebasis: {0}")]
    NotPrebasis(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
