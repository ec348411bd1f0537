//! Std companion of `popmatch-core`: JSON documents, a thread-pool search
//! strategy and the `popmatch` command-line tool.

pub mod cli;
pub mod io;
pub mod parallel;

pub use cli::{run, CommandResult, Status};
