use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the Gamma function at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("quadrature did not converge after {halvings} halvings (last estimates {previous:e}, {last:e})")]
    Convergence {
        halvings: usize,
        previous: f64,
        last: f64,
    },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("resonance: {0}")]
    Resonance(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("frequency extraction failed: {0}")]
    FitQuality(String),

    #[error("invalid model descriptor: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
