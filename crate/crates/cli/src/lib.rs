//! Library side of the `branching` binary, split out so the commands can be
//! driven from tests.

pub mod commands;
pub mod config;
pub mod output;

use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    /// A bad selector; the message is followed by usage help.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] branching_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for numerical failures, 1 for everything the user can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl From<CliError> for ExitCode {
    fn from(e: CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}
