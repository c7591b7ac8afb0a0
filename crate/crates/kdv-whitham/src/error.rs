use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} not resolved: tail {tail:.3e} at {n} coefficients")]
    Resolution { what: &'static str, tail: f64, n: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("theta series converges too slowly for Im T = {tau_im}")]
    SlowConvergence { tau_im: f64 },

    #[error("no sign change on [{a}, {b}]")]
    NoBracket { a: f64, b: f64 },

    #[error("{what} did not converge (residual {residual:.3e})")]
    NonConvergence { what: String, residual: f64 },

    #[error("degenerate denominator: {0}")]
    Degenerate(String),

    #[error("solution blew up at t = {t}")]
    BlowUp { t: f64 },

    #[error("zone table too coarse near x = {x}: {reason}")]
    InterpolationGap { x: f64, reason: String },

    #[error("initial data not resolved: spectral tail {tail:.3e}")]
    UnresolvedInitialData { tail: f64 },
}
