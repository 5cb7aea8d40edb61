//! File formats, reports, parallel ensembles and the `lmbeta` command set,
//! built on [`lmbeta_core`].
//!
//! Every command is a plain function returning a serializable report, so the
//! binary in `main.rs` only parses arguments and maps errors to exit codes.

pub mod commands;
mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::CliError;
pub use lmbeta_core as core;
