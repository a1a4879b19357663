//! Process-level error classification.
//!
//! Every failure is either an input problem (malformed file, bad flag
//! value, missing path) or a domain problem (well-formed request that
//! cannot be satisfied). The distinction is the exit code contract:
//! 0 success, 1 domain failure, 2 input or parse error. Argument-syntax
//! errors exit 2 through the parser itself, matching the same contract.

use std::fmt;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or malformed input, or an out-of-range flag value.
    Input(String),
    /// Valid request the toolkit cannot satisfy.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Reads an input file, classifying any failure as an input error.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Writes an output file; failures here are environment problems, not
/// input problems, so they map to the domain exit code.
pub fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Domain(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))
}
