//! File formats, instance generation and subcommands for the `sdom` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod generate;
pub mod plot;

pub use error::CliError;
pub use format::{ProblemFile, WitnessFile};
pub use generate::{generate, generate_dominating, ConeChoice, GenParams};
