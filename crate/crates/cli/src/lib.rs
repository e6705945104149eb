//! The `gcm` command line: the `.gcm` input format, subcommands and reports.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Command};
pub use format::{parse, InputError, StructureFile};
pub use report::{Report, Status};
