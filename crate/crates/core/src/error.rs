use std::io;

use thiserror::Error;

/// Errors produced by graph construction, the design engine and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no nodes")]
    EmptyGraph,

    #[error("operation requires a binary graph")]
    UnsupportedKind,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance too large: n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
