use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised across the toolkit.
///
/// [`Error::category`] maps each variant to a short code used by the CLI
/// for its exit status and message prefix.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty dataset")]
    EmptyDataset,
    #[error("line {line}: missing column `{column}`")]
    MissingColumn { line: usize, column: String },
    #[error("line {line}: unknown column `{column}`")]
    UnknownColumn { line: usize, column: String },
    #[error("line {line}: duplicate column `{column}`")]
    DuplicateColumn { line: usize, column: String },
    #[error("line {line}, column `{column}`: cannot parse `{value}` as {expected}")]
    BadCell {
        line: usize,
        column: String,
        value: String,
        expected: &'static str,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cleaning would remove all {0} rows")]
    CleaningRemovesAll(usize),
    #[error("class {class} has {count} rows; at least {needed} required")]
    TooFewInClass {
        class: u8,
        count: usize,
        needed: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid hyperparameter for {algorithm}: {message}")]
    InvalidHyperparameter { algorithm: String, message: String },
    #[error("training data contains a single class")]
    SingleClass,
    #[error("shape mismatch: expected {expected} features, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("label vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("label {0} is not binary")]
    NonBinaryLabel(u8),
    #[error("unsupported model format version {found} (this build reads {supported})")]
    UnsupportedVersion { found: u64, supported: u64 },
    #[error("corrupted model document: {0}")]
    CorruptModel(String),
    #[error("schema fingerprint mismatch: model {model}, data {data}")]
    SchemaMismatch { model: String, data: String },
    #[error("config: {0}")]
    Config(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn invalid_hyper(algorithm: impl std::fmt::Display, message: impl Into<String>) -> Self {
        Error::InvalidHyperparameter {
            algorithm: algorithm.to_string(),
            message: message.into(),
        }
    }

    /// Short category code: `data`, `schema`, `model`, `config`, `io` or `fit`.
    pub fn category(&self) -> &'static str {
        match self {
            Error::EmptyDataset
            | Error::BadCell { .. }
            | Error::RaggedRow { .. }
            | Error::Csv(_)
            | Error::CleaningRemovesAll(_)
            | Error::TooFewInClass { .. } => "data",
            Error::MissingColumn { .. }
            | Error::UnknownColumn { .. }
            | Error::DuplicateColumn { .. }
            | Error::ShapeMismatch { .. }
            | Error::SchemaMismatch { .. } => "schema",
            Error::UnsupportedVersion { .. } | Error::CorruptModel(_) | Error::Json(_) => "model",
            Error::Config(_) | Error::InvalidArgument(_) | Error::InvalidHyperparameter { .. } => {
                "config"
            }
            Error::Io { .. } => "io",
            Error::SingleClass | Error::LengthMismatch(..) | Error::NonBinaryLabel(_) => "fit",
        }
    }
}
