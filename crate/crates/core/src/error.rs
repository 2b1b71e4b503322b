use thiserror::Error;

/// Errors raised by the simulator, special functions and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operator evaluated on the fixed outer boundary of the truncated grid.
    #[error("node ({n}, {m}) lies on or beyond the outer boundary (half-width {half_width})")]
    Boundary {
        n: usize,
        m: usize,
        half_width: usize,
    },

    /// A non-finite displacement appeared while stepping.
    #[error("non-finite displacement detected at step {step}")]
    Instability { step: usize },

    /// An argument lies outside the supported domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Simulation or configuration parameters violate an invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A series does not cover the requested analysis window.
    #[error("series covers [{have_start}, {have_end}] but window [{want_start}, {want_end}] is required")]
    Coverage {
        have_start: f64,
        have_end: f64,
        want_start: f64,
        want_end: f64,
    },

    /// Not enough samples for the requested operation.
    #[error("need at least {need} samples, got {got}")]
    TooShort { need: usize, got: usize },

    /// Analysis could not find the feature it was asked to measure.
    #[error("{0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
