//! Scenario loading, experiment commands, and CSV emission for the DS2D
//! uplink simulator.
//!
//! The binary is a thin wrapper over [`commands`]; everything observable
//! (CSV bytes, summary lines, error classification) is testable through
//! this library.

pub mod commands;
pub mod scenario_file;

/// Error classes mapped onto the process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad invocation or unreadable/malformed input (exit 2).
    #[error("{0}")]
    Usage(String),
    /// A scenario or parameter failed validation (exit 3).
    #[error("{0}")]
    Validation(String),
    /// A computation was asked outside its domain (exit 4).
    #[error("{0}")]
    Domain(String),
    /// Downstream reader went away mid-output (exit 0, silent).
    #[error("broken pipe")]
    Pipe,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Domain(_) => 4,
            CliError::Pipe => 0,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::Pipe
        } else {
            CliError::Usage(e.to_string())
        }
    }
}
