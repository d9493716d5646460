//! Command implementations and the HTTP service behind the `coxmut` binary.

pub mod commands;
pub mod input;
pub mod server;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("{0}")]
    Unavailable(String),
    #[error("{0}")]
    Conflict(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 2,
            CliError::CapExceeded(_) => 3,
            CliError::Invalid(_) | CliError::Unavailable(_) | CliError::Conflict(_) => 1,
        }
    }
}
