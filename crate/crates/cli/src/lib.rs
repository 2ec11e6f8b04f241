//! Library half of the `artinloc` command-line tool: input parsing, report
//! serialization and command dispatch.

pub mod input;
pub mod output;
pub mod run;

pub use run::{execute, Cli, Command, Common, Execution, Format, SideArg};
