//! File formats, reports and subcommands of the `wgfam` tool.

pub mod commands;
pub mod dimacs;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Command};
pub use dimacs::parse_dimacs;
pub use error::{CliError, ParseError};
pub use format::{parse_family, serialize_family, FamilyDocument, ParseOptions};
pub use report::{OutputFormat, Report};
