use thiserror::Error;

/// Errors produced by the discovery pipeline and its I/O front ends.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series too short: {len} values (need at least 3)")]
    TooShort { len: usize },

    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("differenced series has zero variance; normalization is undefined")]
    ZeroVariance,

    #[error("invalid alphabet size {a}: must be between 2 and 26")]
    InvalidAlphabet { a: usize },

    #[error("window [{start}, {start}+{span}) exceeds series of length {len}")]
    OutOfRange {
        start: usize,
        span: usize,
        len: usize,
    },

    #[error("no word of {generation} symbols fits a series of {norm_len} normalized points (symbol length {s})")]
    GenerationTooLong {
        generation: usize,
        s: usize,
        norm_len: usize,
    },

    #[error("tracker of length {tracker_len} cannot match candidates of generation {generation}")]
    GenerationMismatch {
        tracker_len: usize,
        generation: usize,
    },

    #[error("series of {len} normalized points exceeds the brute-force guard of {limit}")]
    TooLarge { len: usize, limit: usize },

    #[error("subset spec out of range: {reason}")]
    SubsetOutOfRange { reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("{path}:{line}: cannot parse {what:?} as a number")]
    Parse {
        path: String,
        line: usize,
        what: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
