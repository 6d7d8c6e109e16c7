//! Exit-code contract.
//!
//! 0 success · 1 failed verification or internal failure · 2 invalid
//! configuration · 3 dense-capacity violation. clap's own usage errors exit
//! 2 as well, so malformed flags and malformed values land on the same code.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// The request itself is malformed (ranges, step counts, modes).
    Usage(String),
    /// The request would materialize dense matrices beyond the supported size.
    Capacity(String),
    /// A cross-check failed; carries the names of the failed invariants.
    Verification(String),
    /// Computation or output failure mid-run.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Verification(_) | CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid configuration: {m}"),
            CliError::Capacity(m) => write!(f, "capacity: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Runtime(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<wernerq::Error> for CliError {
    fn from(e: wernerq::Error) -> Self {
        match e {
            wernerq::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            wernerq::Error::Parameter(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o failure: {e}"))
    }
}
