use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum WqError {
    /// Input outside the validity domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The ODE solver ran out of its step budget or violated a constraint.
    #[error("solver failure: {0}")]
    Solver(String),

    /// Adaptive quadrature could not meet the requested tolerance.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// A numerical tolerance was exceeded (precision loss, truncation tail, ...).
    #[error("tolerance failure: {0}")]
    Tolerance(String),

    /// Linear-algebra backend failure.
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

pub type Result<T> = std::result::Result<T, WqError>;
