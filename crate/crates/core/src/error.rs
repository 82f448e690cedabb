use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max |M - M^dag| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("{what} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { what: String, min_eigenvalue: f64 },

    #[error("{what} violates normalization (residual {residual:e})")]
    NotNormalized { what: String, residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ill-conditioned decomposition: {0}")]
    IllConditioned(String),

    #[error("solver failure in {formulation}: status {status}, gap {gap:e}")]
    Solver {
        formulation: String,
        status: String,
        gap: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
