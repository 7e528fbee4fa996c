use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dynamics fault: {0}")]
    DynamicsFault(String),

    #[error("environment has not been reset")]
    NotReset,

    #[error("no reward available before the first step")]
    NoReward,

    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),

    #[error("duplicate dimension `{0}`")]
    DuplicateDimension(String),

    #[error("external driver wrote to dimension `{0}` it does not own")]
    DriverViolation(String),

    #[error("length mismatch: {left} predictions vs {right} actual values")]
    LengthMismatch { left: usize, right: usize },

    #[error("no pairs left after exclusion threshold {threshold}")]
    EmptySelection { threshold: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Self {
        Error::OutOfRange {
            name,
            value,
            lo,
            hi,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        Error::Format {
            path: path.into(),
            message: message.to_string(),
        }
    }
}
