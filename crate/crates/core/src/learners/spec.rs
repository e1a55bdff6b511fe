use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Cart,
    RandomForest,
    ExtraTrees,
    Gbm,
    XgbStyle,
    Adaboost,
    Knn,
    NaiveBayes,
    SgdLogistic,
    LinearSvc,
    Mlp,
    /// Always predicts one class. A reference point for CV and stacking.
    Constant,
}

impl Algorithm {
    /// Every base learner, in the published baseline ranking order (naive
    /// Bayes, absent from that ranking, last). This is the default
    /// declaration order, so it decides selection ties.
    pub const BASE: [Algorithm; 11] = [
        Algorithm::XgbStyle,
        Algorithm::ExtraTrees,
        Algorithm::RandomForest,
        Algorithm::Gbm,
        Algorithm::Cart,
        Algorithm::Mlp,
        Algorithm::Adaboost,
        Algorithm::LinearSvc,
        Algorithm::SgdLogistic,
        Algorithm::Knn,
        Algorithm::NaiveBayes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cart => "cart",
            Algorithm::RandomForest => "random_forest",
            Algorithm::ExtraTrees => "extra_trees",
            Algorithm::Gbm => "gbm",
            Algorithm::XgbStyle => "xgb_style",
            Algorithm::Adaboost => "adaboost",
            Algorithm::Knn => "knn",
            Algorithm::NaiveBayes => "naive_bayes",
            Algorithm::SgdLogistic => "sgd_logistic",
            Algorithm::LinearSvc => "linear_svc",
            Algorithm::Mlp => "mlp",
            Algorithm::Constant => "constant",
        }
    }

    /// Distance, linear and neural learners see z-scored features.
    pub fn needs_standardization(self) -> bool {
        matches!(
            self,
            Algorithm::Knn | Algorithm::SgdLogistic | Algorithm::LinearSvc | Algorithm::Mlp
        )
    }

    /// Hyperparameter names this algorithm accepts.
    pub fn allowed_params(self) -> &'static [&'static str] {
        match self {
            Algorithm::Cart => &["criterion", "max_depth", "min_samples_split", "max_features"],
            Algorithm::RandomForest | Algorithm::ExtraTrees => &[
                "n_estimators",
                "criterion",
                "max_depth",
                "min_samples_split",
                "max_features",
            ],
            Algorithm::Gbm => &["n_estimators", "learning_rate", "max_depth", "min_samples_split"],
            Algorithm::XgbStyle => &[
                "n_estimators",
                "learning_rate",
                "max_depth",
                "lambda",
                "gamma",
                "min_child_weight",
            ],
            Algorithm::Adaboost => &["n_estimators", "learning_rate"],
            Algorithm::Knn => &["k"],
            Algorithm::NaiveBayes => &["var_smoothing"],
            Algorithm::SgdLogistic | Algorithm::LinearSvc => &["epochs", "eta0", "decay", "alpha"],
            Algorithm::Mlp => &[
                "hidden",
                "epochs",
                "learning_rate",
                "momentum",
                "alpha",
                "activation",
            ],
            Algorithm::Constant => &["class"],
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::BASE
            .iter()
            .chain(&[Algorithm::Constant])
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// A hyperparameter value as written in config and model files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl ParamValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ParamValue::Int(v) => Some(*v as f64),
            ParamValue::Float(v) => Some(*v),
            ParamValue::Text(_) => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            ParamValue::Int(v) => Some(*v),
            ParamValue::Float(v) if v.fract() == 0.0 => Some(*v as i64),
            _ => None,
        }
    }

    /// Ordering used for grid-search tie-breaks: numbers by value, text
    /// lexically, numbers before text.
    pub fn order(&self, other: &ParamValue) -> Ordering {
        match (self.as_f64(), other.as_f64()) {
            (Some(a), Some(b)) => a.total_cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => match (self, other) {
                (ParamValue::Text(a), ParamValue::Text(b)) => a.cmp(b),
                _ => Ordering::Equal,
            },
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Float(v) => write!(f, "{v}"),
            ParamValue::Text(v) => f.write_str(v),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Float(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.into())
    }
}

pub type Hyperparameters = BTreeMap<String, ParamValue>;

/// Algorithm, hyperparameters and seed; everything `fit` needs besides data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerSpec {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub hyperparameters: Hyperparameters,
    #[serde(default)]
    pub seed: u64,
}

impl LearnerSpec {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            hyperparameters: BTreeMap::new(),
            seed: 0,
        }
    }

    pub fn with(mut self, name: &str, value: impl Into<ParamValue>) -> Self {
        self.hyperparameters.insert(name.into(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn needs_standardization(&self) -> bool {
        self.algorithm.needs_standardization()
    }

    /// Rejects unknown names and out-of-range values.
    pub fn validate(&self, n_features: usize) -> Result<()> {
        super::params::FitParams::from_spec(self, n_features).map(|_| ())
    }

    /// Short label such as `knn(k=9)`.
    pub fn label(&self) -> String {
        if self.hyperparameters.is_empty() {
            return self.algorithm.name().to_string();
        }
        let parts: Vec<String> = self.hyperparameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.algorithm, parts.join(","))
    }
}
