use thiserror::Error;

/// Failures raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: {what} (estimated relative error {estimate:e})")]
    Quadrature { what: String, estimate: f64 },

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    EigenSolve(usize),

    #[error("skew decomposition breaks down at block n = {n} (|tau| below tolerance)")]
    Breakdown { n: usize },

    #[error("consistency check failed: {what} (residual {residual:e}, tolerance {tol:e})")]
    Consistency { what: String, residual: f64, tol: f64 },

    #[error("vanishing coefficient {name}_{j} at X = {x}")]
    Vanishing { name: &'static str, j: usize, x: String },

    #[error("denominator parameter hits a pole in the hypergeometric series at term {0}")]
    HypergeometricPole(usize),

    #[error("series does not terminate: no non-positive integer numerator parameter")]
    NonTerminating,
}

pub type Result<T> = std::result::Result<T, Error>;
