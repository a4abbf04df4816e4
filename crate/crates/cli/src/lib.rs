//! Command-line front end for `bz-core`: multiplicities, decompositions,
//! triangle listings, non-vanishing tests, polytope export and cross-checks.

pub mod format;
pub mod query;
pub mod run;

pub use query::{Mode, Options, Output, QuerySpec};
pub use run::{run, Record};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bz_core::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Exit status for a completed run.
pub const EXIT_OK: i32 = 0;
/// Malformed input or unsupported request.
pub const EXIT_USAGE: i32 = 1;
/// Two counters disagreed.
pub const EXIT_DISCREPANCY: i32 = 2;
