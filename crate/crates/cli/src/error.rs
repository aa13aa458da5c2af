use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A malformed token; `position` is a byte offset into `input`.
    #[error("cannot parse {what} `{input}` at position {position}: {message}")]
    Parse { what: &'static str, input: String, position: usize, message: String },
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] rigpack::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
