//! Front end of the `bending` command: configuration layering, execution
//! and report serialization.

pub mod cli;
pub mod config;
pub mod run;
