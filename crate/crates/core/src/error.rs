//! Error type shared by every module in the crate.

use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::Label;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty corpus: {context}")]
    EmptyCorpus { context: String },

    #[error("{}:{line}: malformed record: {reason}", path.display())]
    MalformedRecord {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    #[error("{}:{line}: unknown label {token:?}", path.display())]
    UnknownLabel {
        path: PathBuf,
        line: u64,
        token: String,
    },

    #[error("{}:{line}: malformed dictionary entry: {reason}", path.display())]
    MalformedEntry {
        path: PathBuf,
        line: u64,
        reason: String,
    },

    #[error(
        "{}:{line}: duplicate dictionary key {key:?} (first defined at line {first_line})",
        path.display()
    )]
    DuplicateKey {
        path: PathBuf,
        line: u64,
        first_line: u64,
        key: String,
    },

    #[error("split ratio must lie strictly between 0 and 1, got {ratio}")]
    RatioOutOfRange { ratio: f64 },

    #[error("cannot stratify split: corpus has no {label} messages")]
    EmptyClass { label: Label },

    #[error("requested {requested} {label} training messages, corpus has only {available}")]
    TrainCountOutOfRange {
        label: Label,
        requested: usize,
        available: usize,
    },

    #[error("train count for {label} must be at least 1")]
    TrainCountZero { label: Label },

    #[error("training corpus has no {label} messages")]
    MissingTrainingClass { label: Label },

    #[error("every training message normalized to zero tokens; nothing to learn from")]
    NoTrainingTokens,

    #[error("invalid smoothing configuration: {reason}")]
    InvalidSmoothing { reason: String },

    #[error(
        "pipeline fingerprint mismatch: model expects {expected}, input was preprocessed with {actual}"
    )]
    FingerprintMismatch { expected: String, actual: String },

    #[error("unsupported model file version: expected {expected:?}, found {found:?}")]
    ModelVersion { expected: String, found: String },

    #[error("model file checksum mismatch: stored {stored}, computed {computed}")]
    ModelChecksum { stored: String, computed: String },

    #[error("truncated model file: {reason}")]
    ModelTruncated { reason: String },

    #[error("{}:{line}: invalid model file: {reason}", path.display())]
    ModelParse {
        path: PathBuf,
        line: u64,
        reason: String,
    },
}
