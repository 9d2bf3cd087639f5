use crate::specfun::Complex;

/// Errors raised by the special functions, the regime solvers and the oracle.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: Complex },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{function} did not converge within {terms} terms")]
    Convergence {
        function: &'static str,
        terms: usize,
    },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("degenerate current Re[j_l12] ~ 0 at epsilon = {epsilon}, u0 = {u0}")]
    Degenerate { epsilon: f64, u0: f64 },

    #[error("grid resolution: {0}")]
    Resolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
