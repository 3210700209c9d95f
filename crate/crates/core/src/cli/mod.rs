//! File formats, instance generators, property suites and the command layer
//! behind the `accat` binary.

pub mod commands;
pub mod generate;
pub mod io;
pub mod suite;

pub use commands::{execute, Cli, Command, Output, EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_PROPERTY};
