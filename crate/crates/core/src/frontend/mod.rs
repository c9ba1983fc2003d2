//! Surface language: reader, compiler, file runner and REPL.

pub mod compile;
pub mod reader;
pub mod repl;
pub mod runner;

pub use compile::LoadError;
pub use reader::{read_all, ReadError};
pub use runner::{run_file, run_source, RunOptions, Session};
