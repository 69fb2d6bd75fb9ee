//! Command-line front end for `pftc-core`: configuration, execution and the
//! CSV result formats.

pub mod config;
pub mod output;
pub mod run;

pub use config::{ConfigError, Mode, PartialConfig, RunConfig};
pub use run::{execute, simulate, CliError, Outcome};
