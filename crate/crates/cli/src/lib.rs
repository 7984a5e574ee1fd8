//! Command-line surface over `confstab-core`, plus the independent
//! projective-space oracle used by the acceptance suite.
//!
//! Exit codes: 0 success, 1 a checked claim failed on the computed data
//! (or I/O failed), 2 configuration error, 3 the two Hilbert engines
//! disagreed (an internal bug, never expected).

use std::io::Write;
use std::path::Path;

pub mod config;
pub mod oracle;
pub mod run;

pub use config::{Cli, Command};
pub use run::{run, Outcome, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Config(String),
    EngineDisagreement(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::EngineDisagreement(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::EngineDisagreement(msg) => {
                write!(f, "hilbert engines disagree (internal bug): {msg}")
            }
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Worker-count cap: CONFSTAB_THREADS if set, else the available
/// parallelism, at least 1.
pub fn thread_cap() -> usize {
    std::env::var("CONFSTAB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Writes via a sibling temp file and a rename, so readers never observe a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
