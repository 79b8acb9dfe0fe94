//! Command-line front end: an expression parser for the ring presentations,
//! configuration-file ingestion, static rendering, and wrappers around the
//! library's verification sweeps. See [`commands::run`] for the entry point;
//! every subcommand's output comes from the same library calls an API user
//! would make.

pub mod commands;
pub mod eval;
pub mod parser;
pub mod render;

pub use commands::{run, CmdOutcome};
