//! Configuration, reports and subcommand operations behind the `confine` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod published;
pub mod runs;

pub use config::{ModeSelection, OutputFormat, RunConfig};
pub use error::{CliError, CliResult};
