//! Command line front end for `bpfkit`: JSON input documents, one command
//! per invocation, JSON or text output.

pub mod commands;
pub mod input;
pub mod output;

pub use commands::{run, CliError, Command, Options};
pub use output::ResultDocument;
