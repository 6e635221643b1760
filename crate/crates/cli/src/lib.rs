//! Command-line front end and JSON session service for the `amas` toolkit.

pub mod commands;
pub mod service;

pub use commands::{run, Cli, CliError, Report};
