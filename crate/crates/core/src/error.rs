use thiserror::Error;

/// Errors produced by the numerical routines and the sweep drivers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {operation}: {detail}")]
    Domain {
        operation: &'static str,
        detail: String,
    },

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimated error {error_estimate:e}, target {target:e})")]
    NonConvergence {
        subdivisions: usize,
        error_estimate: f64,
        target: f64,
    },

    #[error("Toeplitz matrix numerically singular at step {index}: prediction error {value:e}")]
    Singular { index: usize, value: f64 },

    #[error("matrix not positive definite: pivot {pivot} is {value:e}")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("innovation estimate r({n}) = {estimate} is below the lower bound {bound}")]
    BoundViolated { n: usize, estimate: f64, bound: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(operation: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            operation,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
