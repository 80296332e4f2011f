//! Command-line front end for `complex-susy`.
//!
//! The binary is a thin wrapper; everything it does is reachable from here
//! so the integration tests can drive it without spawning processes.

pub mod commands;
pub mod complex;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod verify;

pub use commands::{Job, PivSelection, StateSelection, Task};
pub use complex::{format_complex, parse_complex};
pub use config::{GridSpec, OutputFormat, RunConfig, SeedChoice, Tolerances};
pub use error::{CliError, CliResult};
pub use output::{Dataset, Output, Sink};
