//! File formats, JSON reports and the command-line front end for
//! [`teamsem`].
//!
//! Exit codes: 0 success (or the entailment holds), 1 an entailment fails
//! or a table cell disagrees, 2 usage or input errors, 3 a resource cap
//! was exceeded.

mod cli;
mod error;
pub mod report;
pub mod teamfile;

pub use cli::{run, Cli, Command};
pub use error::WorkbenchError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
