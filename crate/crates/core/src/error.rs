//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("series must contain at least one value")]
    EmptySeries,

    #[error("series must contain at least {required} values, got {got}")]
    SeriesTooShort { required: usize, got: usize },

    #[error("non-finite value at position {position}")]
    NonFinite { position: usize },

    #[error("series of length {len} exceeds the oracle limit of {max}")]
    TooLong { len: usize, max: usize },

    #[error("envelope was built for window {envelope}, but window {requested} was requested")]
    EnvelopeWindowMismatch { envelope: usize, requested: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("band count must be at least 1")]
    InvalidV,

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("training series {index} has no label")]
    MissingLabel { index: usize },

    #[error("{path}: file contains no records")]
    EmptyFile { path: String },

    #[error("{path}: {source}")]
    FileRead {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: record has {got} values, expected {expected}")]
    RaggedLengths {
        path: String,
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),

    #[error("tightness needs at least one pair")]
    EmptyPairs,

    #[error("every pair has DTW distance zero; tightness ratios are undefined")]
    AllPairsDegenerate,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
