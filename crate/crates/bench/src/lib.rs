//! Instance generation, single runs and manifest-driven sweeps with CSV
//! reporting.

pub mod generate;
pub mod manifest;
pub mod run;

use std::path::PathBuf;

use ccs_core::CoreError;
use thiserror::Error;

pub use generate::{generate, Family, GenParams};
pub use manifest::{parse_manifest, sweep, Entry, Source};
pub use run::{run, write_csv, Algo, RunConfig, RunReport, Status, CSV_HEADER};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Instance {
        path: PathBuf,
        #[source]
        source: CoreError,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("{0}")]
    Argument(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Reads and parses an instance file.
pub fn read_instance(path: impl Into<PathBuf>) -> Result<ccs_core::Instance, BenchError> {
    let path = path.into();
    let text = std::fs::read_to_string(&path).map_err(|source| BenchError::Io {
        path: path.clone(),
        source,
    })?;
    ccs_core::parse_instance(&text).map_err(|source| BenchError::Instance { path, source })
}
