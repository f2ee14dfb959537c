use thiserror::Error;

/// Errors raised by the numerical kernels, geometry and simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms (last estimate {value})")]
    NonConvergence { terms: usize, value: f64 },

    #[error("integration tolerance not met: value {value}, error estimate {err_estimate}")]
    ToleranceNotMet { value: f64, err_estimate: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("point lies in no integration region: {0}")]
    Region(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
