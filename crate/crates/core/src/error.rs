//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the dense and structured pipelines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A dense operation would allocate a matrix larger than the hard cap.
    #[error("dense dimension {dim} exceeds cap {cap}")]
    Capacity { dim: usize, cap: usize },

    /// Operands have incompatible or invalid dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A matrix expected to be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: max deviation {max_dev:.3e} exceeds {tol:.3e}")]
    NotHermitian { max_dev: f64, tol: f64 },

    /// The Jacobi sweep loop ran out of iterations before the off-diagonal
    /// norm dropped below threshold.
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// A scalar argument is outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An eigenvalue of a nominally positive-semidefinite matrix is too
    /// negative to be rounding noise.
    #[error("eigenvalue {value:.3e} is negative beyond tolerance")]
    NegativeEigenvalue { value: f64 },

    /// A function was evaluated outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
