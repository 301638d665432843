//! Batch front end. A job is a command plus a configuration file; every
//! command writes `<command>.json` to the output directory and exits with 0
//! (all checks pass), 1 (a violation was found) or 2 (bad input or a
//! non-generic `λ`).

pub mod commands;
pub mod config;

pub use commands::{run, Command, Outcome};
pub use config::{JobConfig, RawConfig, Value};
