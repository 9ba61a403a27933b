//! Error type mapping onto the CLI exit codes.

use std::fmt;

/// Harness errors. `Config` maps to exit code 2, `NumericalInvariant`
/// to exit code 3, everything else to 1.
#[derive(Debug)]
pub enum CliError {
    /// Invalid or unreadable configuration.
    Config(String),
    /// A measured quantity violated an invariant the run promises.
    NumericalInvariant(String),
    /// Failure inside the core library.
    Core(tidfd_core::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::NumericalInvariant(msg) => {
                write!(f, "numerical invariant violated: {msg}")
            }
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tidfd_core::Error> for CliError {
    fn from(e: tidfd_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NumericalInvariant(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
