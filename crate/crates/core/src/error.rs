use thiserror::Error;

/// Errors reported by the numeric kernel and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |A - A^dag| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("size {size} does not factor as {n_a} x {n_b}")]
    NotFactorizable { size: usize, n_a: usize, n_b: usize },
    #[error("zero vector has no ray")]
    ZeroVector,
    #[error("non-finite entry")]
    NonFinite,
    #[error("operator is not positive: smallest eigenvalue {min_eigenvalue:e} below -{tol:e}")]
    NotPositive { min_eigenvalue: f64, tol: f64 },
    #[error("trace {trace} differs from 1 by more than {tol:e}")]
    TraceNotOne { trace: f64, tol: f64 },
    #[error("value {value} outside [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },
    #[error("coefficient matrix carries no bipartition")]
    MissingPartition,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("criterion not applicable: {0}")]
    Inapplicable(String),
    #[error("{routine} did not converge in {sweeps} sweeps")]
    NoConvergence { routine: &'static str, sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
