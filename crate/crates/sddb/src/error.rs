use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the command-line layer, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input file; exit code 2.
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: u64, message: String },
    /// Malformed JSON; exit code 2.
    #[error("{}: {message}", path.display())]
    Syntax { path: PathBuf, message: String },
    /// A configuration field or flag outside its domain; exit code 3.
    #[error("invalid configuration at `{field}`: {message}")]
    Config { field: String, message: String },
    /// Numerical core error, exit code 3 for violated preconditions and 4 otherwise.
    #[error(transparent)]
    Core(#[from] sddb_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config { field: field.into(), message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use sddb_core::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Syntax { .. } => 2,
            CliError::Config { .. } => 3,
            CliError::Io { source, .. } if source.kind() == io::ErrorKind::NotFound => 3,
            CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                E::InvalidGrid(_)
                | E::GridTooCoarse { .. }
                | E::DegenerateSeries
                | E::SeriesTooShort { .. }
                | E::NonFiniteSample(_)
                | E::InvalidKurtosis(_)
                | E::TooFewReplicates { .. }
                | E::ZeroVariance
                | E::InvalidParameter(_) => 3,
                E::NonPositiveDensity { .. }
                | E::VarianceMismatch { .. }
                | E::ExplosivePath { .. }
                | E::CombinerDomain
                | E::FloorViolation { .. } => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
