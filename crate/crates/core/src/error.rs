use thiserror::Error;

/// Errors raised by the numerics in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("trace is not 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("infeasible t = {t}: element {index} has min eigenvalue {eigenvalue:e}")]
    InfeasibleT {
        t: f64,
        index: String,
        eigenvalue: f64,
    },

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: &'static str },

    #[error("internal consistency check failed: {what} (residual {residual:e})")]
    Consistency { what: String, residual: f64 },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("malformed matrix data: {0}")]
    Interchange(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
