//! Library side of the `blockdet` binary: matrix file ingestion, report
//! rendering and the command implementations. `main.rs` only parses flags
//! and maps errors to exit codes.
//!
//! Reports written to stdout (or `--output`) are deterministic for a given
//! input, configuration and seed; wall-clock measurements go to stderr (the
//! `bench` command, whose job is timing, is the one exception).

pub mod commands;
pub mod formats;
pub mod reports;

use std::fmt;

/// CLI-level error with its process exit code: 1 usage, 2 parse, 3 resource
/// cap. Success is 0.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable paths, infeasible generator specs.
    Usage(String),
    /// Malformed or dimensionally invalid input files.
    Parse(String),
    /// A configured cap was exceeded.
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Resource(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<blockdet::Error> for CliError {
    fn from(e: blockdet::Error) -> CliError {
        match e {
            blockdet::Error::Resource { .. } => CliError::Resource(e.to_string()),
            blockdet::Error::Dimension(_) => CliError::Parse(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
