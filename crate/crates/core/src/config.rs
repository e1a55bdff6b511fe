//! Pipeline configuration, read from TOML.
//!
//! `defaults` names a built-in configuration: 80/20 stratified split,
//! 10 folds, every base learner with its default hyperparameters, the
//! n_estimators and k grids for baseline tuning, and a four-base stack.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::data::{CleaningStrategy, FeatureEncoding};
use crate::ensemble::StackingConfig;
use crate::error::{Error, Result};
use crate::learners::{Algorithm, Hyperparameters, LearnerSpec, ParamValue};
use crate::rng;

pub const BUILTIN_DEFAULTS: &str = "defaults";

/// Where the dataset is looked for when the config names none.
pub const DATASET_ENV: &str = "HEART_CSV";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub name: String,
    pub values: Vec<ParamValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidate {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub hyperparameters: Hyperparameters,
    /// Baseline tuning axes, searched in the listed order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grid: Vec<GridAxis>,
}

impl Candidate {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            hyperparameters: Hyperparameters::new(),
            grid: Vec::new(),
        }
    }

    pub fn with(mut self, name: &str, value: impl Into<ParamValue>) -> Self {
        self.hyperparameters.insert(name.into(), value.into());
        self
    }

    pub fn with_grid(mut self, name: &str, values: &[i64]) -> Self {
        self.grid.push(GridAxis {
            name: name.into(),
            values: values.iter().map(|&v| ParamValue::Int(v)).collect(),
        });
        self
    }

    pub fn grid_pairs(&self) -> Vec<(String, Vec<ParamValue>)> {
        self.grid.iter().map(|a| (a.name.clone(), a.values.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackSettings {
    pub top_n: usize,
    pub meta: Candidate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    /// CSV path; falls back to `$HEART_CSV` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: u64,
    #[serde(default)]
    pub encoding: FeatureEncoding,
    pub cleaning: CleaningStrategy,
    pub split_fraction: f64,
    pub folds: usize,
    pub candidates: Vec<Candidate>,
    pub stacking: StackSettings,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self::standard()
    }
}

impl PipelineConfig {
    pub fn standard() -> Self {
        use Algorithm::*;
        let candidates = Algorithm::BASE
            .iter()
            .map(|&a| match a {
                XgbStyle => Candidate::new(a)
                    .with("n_estimators", 500)
                    .with_grid("n_estimators", &[100, 500, 1000, 2000]),
                ExtraTrees => Candidate::new(a)
                    .with("n_estimators", 500)
                    .with_grid("n_estimators", &[100, 500, 1000]),
                RandomForest => Candidate::new(a).with("criterion", "entropy"),
                Knn => Candidate::new(a).with("k", 9).with_grid("k", &[3, 5, 7, 9, 11]),
                _ => Candidate::new(a),
            })
            .collect();
        Self {
            dataset: None,
            out: PathBuf::from("out"),
            seed: 42,
            encoding: FeatureEncoding::Codes,
            cleaning: CleaningStrategy::IqrTargetRows { target_rows: 1175 },
            split_fraction: 0.8,
            folds: 10,
            candidates,
            stacking: StackSettings {
                top_n: 4,
                meta: Candidate::new(SgdLogistic),
            },
        }
    }

    /// `defaults` or a TOML file path.
    pub fn load(name_or_path: &str) -> Result<Self> {
        if name_or_path == BUILTIN_DEFAULTS {
            return Ok(Self::standard());
        }
        let path = Path::new(name_or_path);
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg = Self::from_toml(&text)?;
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.split_fraction > 0.0 && self.split_fraction < 1.0) {
            return Err(Error::Config(format!("split_fraction {} not in (0, 1)", self.split_fraction)));
        }
        if self.folds < 2 {
            return Err(Error::Config(format!("folds must be at least 2, got {}", self.folds)));
        }
        if self.candidates.is_empty() {
            return Err(Error::Config("no candidates".into()));
        }
        if self.stacking.top_n == 0 || self.stacking.top_n > self.candidates.len() {
            return Err(Error::Config(format!(
                "stacking.top_n = {} but there are {} candidates",
                self.stacking.top_n,
                self.candidates.len()
            )));
        }
        let d = crate::data::Schema::canonical().encoded_columns(self.encoding).len();
        for (i, c) in self.candidates.iter().enumerate() {
            self.candidate_spec(i).validate(d)?;
            for axis in &c.grid {
                if axis.values.is_empty() {
                    return Err(Error::Config(format!("{}: grid axis `{}` is empty", c.algorithm, axis.name)));
                }
            }
        }
        self.meta_spec().validate(self.stacking.top_n)?;
        if let CleaningStrategy::Iqr { multiplier } = self.cleaning {
            if !(multiplier.is_finite() && multiplier >= 0.0) {
                return Err(Error::Config(format!("iqr multiplier {multiplier} must be non-negative")));
            }
        }
        Ok(())
    }

    /// Candidate `i` with its seed derived from the master seed.
    pub fn candidate_spec(&self, i: usize) -> LearnerSpec {
        let c = &self.candidates[i];
        LearnerSpec {
            algorithm: c.algorithm,
            hyperparameters: c.hyperparameters.clone(),
            seed: rng::derive_seed(self.seed, i as u64),
        }
    }

    pub fn meta_spec(&self) -> LearnerSpec {
        let m = &self.stacking.meta;
        LearnerSpec {
            algorithm: m.algorithm,
            hyperparameters: m.hyperparameters.clone(),
            seed: rng::derive_seed(self.seed, u64::MAX),
        }
    }

    pub fn stacking_config(&self) -> StackingConfig {
        StackingConfig {
            candidates: (0..self.candidates.len()).map(|i| self.candidate_spec(i)).collect(),
            top_n: self.stacking.top_n,
            meta: self.meta_spec(),
            oof_folds: self.folds,
            seed: self.seed,
        }
    }

    /// The configured path, else `$HEART_CSV`.
    pub fn dataset_path(&self) -> Result<PathBuf> {
        self.dataset
            .clone()
            .or_else(|| std::env::var_os(DATASET_ENV).map(PathBuf::from))
            .ok_or_else(|| Error::Config(format!("no dataset given (set `dataset` or ${DATASET_ENV})")))
    }
}
