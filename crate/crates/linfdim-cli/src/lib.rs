//! Command-line front end: graph files, run reports, DOT output and the
//! command handlers behind the `linfdim` binary.

pub mod commands;
pub mod dot;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{certify, run, Cli, Done};
pub use error::CliError;
pub use format::{GraphFile, Loaded, Metadata};
pub use report::RunReport;
