use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration or arguments; the message names the offending field or invariant.
    #[error("config error: {0}")]
    Config(String),

    #[error("{what} exceeds cap: needed more than {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("{what} did not converge after {iterations} iterations (best residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inconsistent cross-check: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidInput(_) | Error::Json(_) => 2,
            Error::CapExceeded { .. } => 3,
            Error::NonConvergence { .. } => 4,
            Error::Inconsistent(_) => 5,
            Error::Io(_) => 1,
        }
    }
}
