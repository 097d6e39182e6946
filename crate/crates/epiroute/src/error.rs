//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A domain precondition was violated (bad rate, fraction out of range, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Scenario or sweep configuration could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    /// The ODE integrator detected a state outside the admissible region.
    #[error("integration failure: {0}")]
    Integration(String),

    /// A Monte-Carlo run failed; the batch index is attached.
    #[error("run {run} failed: {message}")]
    Run { run: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code the CLI maps this error to (1 config, 2 runtime).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::Config(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
