//! JSON formats and command-line driver for `antipodal-core`.

pub mod cli;
pub mod json;

use antipodal_core::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Input(String),
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    NotCertified = 1,
    InvalidInput = 2,
    Numerical = 3,
}

impl CliError {
    /// Short machine-readable name, e.g. `NotSymmetric`.
    pub fn name(&self) -> String {
        match self {
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                debug.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
            }
            CliError::Json(_) => "MalformedJson".into(),
            CliError::Io(_) => "Io".into(),
            CliError::Csv(_) => "Csv".into(),
            CliError::Input(_) => "InvalidInput".into(),
        }
    }

    pub fn exit(&self) -> Exit {
        match self {
            CliError::Core(Error::NumericalBreakdown(_) | Error::NotConverged(_) | Error::DegenerateStart) => {
                Exit::Numerical
            }
            CliError::Core(Error::NotStrictlyConvexEvidence { .. }) => Exit::NotCertified,
            _ => Exit::InvalidInput,
        }
    }
}
