//! Library side of the `symsim` command-line tool: problem-file parsing,
//! command dispatch, result documents and the oracle verification ladder.

pub mod cache;
pub mod commands;
pub mod document;
mod error;
pub mod sampling;
pub mod spec;
pub mod verify;

pub use commands::{run, Command, Method, Outcome, RunOptions, What};
pub use error::{CliError, Result};
