//! Command line front end: model configuration, built-in models, reports and
//! the golden self test.

pub mod builtins;
pub mod commands;
pub mod config;
pub mod report;
pub mod selftest;

pub use commands::{run, Model, Outcome, RunOptions};
pub use config::{parse_config, ModelConfig};

use equimirror_core::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IDENTITY: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("cap: {0}")]
    Cap(String),
    #[error("{0}")]
    Model(Error),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    /// Sort a library error into configuration problems, cap violations and
    /// internal faults.
    pub fn from_model(e: Error) -> CliError {
        match e {
            Error::CapExceeded { .. } | Error::DimensionCap { .. } | Error::VertexCap { .. } => CliError::Cap(e.to_string()),
            Error::NonInvertible { .. }
            | Error::RankMismatch { .. }
            | Error::NotAnAction { .. }
            | Error::BadPermutation { .. }
            | Error::NotInvariant { .. }
            | Error::NotFullDimensional
            | Error::NotReflexive
            | Error::AffineAction => CliError::Config(e.to_string()),
            other => CliError::Model(other),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Model(_) => EXIT_INTERNAL,
        }
    }
}
