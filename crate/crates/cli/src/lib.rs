//! File formats and subcommand runners behind the `lcachar` binary.
//!
//! Split out as a library so integration tests can parse and produce the
//! same JSON/CSV documents the binary does.

// `!(x > 0.0)` guards reject NaN along with nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod formats;
pub mod output;
pub mod runner;

/// Failure modes with their exit codes: usage and IO problems exit 1,
/// a certificate failing its grid verification exits 2 (after printing
/// the certificate JSON).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(String),
}

impl From<lcachar_core::Error> for CliError {
    fn from(e: lcachar_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
