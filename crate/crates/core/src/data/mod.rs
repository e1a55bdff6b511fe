//! Dataset ingestion, validation, cleaning, splitting and descriptive
//! statistics.

mod clean;
mod dataset;
mod matrix;
mod schema;
mod split;
mod standardize;
mod stats;
mod validate;

pub use clean::{IQR_GRID, clean, iqr_sweep, CleaningReport, CleaningStrategy, IqrSweepPoint};
pub use dataset::{parse_csv, parse_csv_path, parse_scoring_csv, Dataset, Provenance, ScoringTable};
pub use matrix::Matrix;
pub use schema::{AttributeKind, AttributeSpec, FeatureEncoding, Schema, FEATURE_NAMES, TARGET_NAME};
pub use split::{stratified_split, SplitPair};
pub use standardize::Standardizer;
pub use stats::{
    correlation_matrix, correlation_with_target, pearson, summarize, CorrelationEntry,
    CorrelationMatrix, CorrelationTable, Histogram, NominalCounts, DEFAULT_BINS, SlopeByAge, SummaryReport,
};
pub use validate::{validate_schema, Issue, ValidationReport};
