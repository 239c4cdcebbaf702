use thiserror::Error;

/// Errors surfaced by the library.
///
/// Solver failures carry enough context to diagnose the offending problem;
/// non-convergence keeps the best iterate so callers can inspect it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} outside {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("degree {got} exceeds cap {cap}")]
    DegreeCap { got: usize, cap: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("moment condition violated at index {index}: integral = {value:e}")]
    MomentViolation { index: usize, value: f64 },

    #[error("{what} did not converge after {iterations} iterations (best value {best:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        best: f64,
    },

    #[error("linear program infeasible: {0}")]
    Infeasible(String),

    #[error("linear program unbounded")]
    Unbounded,

    #[error("quadrature failed to reach tolerance {tol:e} within {segments} segments")]
    QuadratureCap { tol: f64, segments: usize },

    #[error("singular linear system in {0}")]
    SingularSystem(&'static str),

    #[error("{0} is unsupported: {1}")]
    Unsupported(&'static str, String),
}

pub type Result<T> = std::result::Result<T, Error>;
