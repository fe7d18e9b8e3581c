//! Job driver for the `flagconn` command: configuration, pipeline and
//! tensor/report serialization.

pub mod config;
pub mod job;
pub mod output;

pub use config::{CheckKind, Coefficients, Format, JobConfig};
pub use job::{run, run_job, verify, JobOutcome};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] flagconn::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed tensor file: {0}")]
    Format(String),
}

impl JobError {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        JobError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
