//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rank-deficient system: {0}")]
    RankDeficient(String),

    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),

    #[error("initialization failed: {0}")]
    InitializationFailed(String),

    /// The joint-estimator objective increased between outer iterations,
    /// which the alternating scheme forbids; carries the trace for triage.
    #[error("objective diverged at outer iteration {iteration}: {previous:.6e} -> {current:.6e}")]
    Diverged {
        iteration: usize,
        previous: f64,
        current: f64,
        trace: Vec<f64>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
