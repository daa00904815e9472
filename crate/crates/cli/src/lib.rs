//! Problem files, the JSON certificate format and the `splitforge` command
//! line.

pub mod commands;
pub mod demo;
pub mod document;
pub mod parser;

pub use commands::{run, run_with, ExitCode, BUDGET_ENV};
