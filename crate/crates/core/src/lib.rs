//! Binary classification toolkit for tabular heart-disease risk data.
//!
//! The crate covers the whole workflow: CSV ingestion and validation
//! ([`data`]), ten base learners plus cross-validation and grid search
//! ([`learners`]), a stacked ensemble over the best base learners
//! ([`ensemble`]), confusion-matrix metrics and ROC/PR curves
//! ([`metrics`]), versioned model files ([`model_store`]) and the
//! end-to-end command pipeline ([`pipeline`]).
//!
//! Data-parallel loops (trees, folds, grid points) run on rayon when the
//! `parallel` feature is enabled and fall back to plain iterators otherwise.
//! Every random stream is derived from a master seed by a fixed index, so
//! results do not depend on the number of worker threads.

pub mod config;
pub mod data;
pub mod ensemble;
pub mod error;
pub mod learners;
pub mod literature;
pub mod metrics;
pub mod model_store;
pub mod par;
pub mod pipeline;
pub mod rng;
pub mod synthetic;

pub use error::{Error, Result};
