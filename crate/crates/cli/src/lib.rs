//! Command-line front end for `bondcat`: the `bondcat/1` JSON documents and
//! the subcommands built on them.

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{run, Cli, Response};
pub use error::CliError;
