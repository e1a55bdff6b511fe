//! Typed, validated hyperparameters per algorithm, with defaults.

use super::spec::{Algorithm, LearnerSpec, ParamValue};
use super::tree::Criterion;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeEnsembleParams {
    pub n_estimators: usize,
    pub criterion: Criterion,
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
    pub max_features: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GbmParams {
    pub n_estimators: usize,
    pub learning_rate: f64,
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XgbParams {
    pub n_estimators: usize,
    pub learning_rate: f64,
    pub max_depth: Option<usize>,
    pub lambda: f64,
    pub gamma: f64,
    pub min_child_weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaBoostParams {
    pub n_estimators: usize,
    pub learning_rate: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SgdParams {
    pub epochs: usize,
    pub eta0: f64,
    pub decay: f64,
    pub alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Tanh,
    Relu,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MlpParams {
    pub hidden: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub momentum: f64,
    pub alpha: f64,
    pub activation: Activation,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FitParams {
    Cart(TreeEnsembleParams),
    RandomForest(TreeEnsembleParams),
    ExtraTrees(TreeEnsembleParams),
    Gbm(GbmParams),
    XgbStyle(XgbParams),
    Adaboost(AdaBoostParams),
    Knn { k: usize },
    NaiveBayes { var_smoothing: f64 },
    SgdLogistic(SgdParams),
    LinearSvc(SgdParams),
    Mlp(MlpParams),
    Constant { class: u8 },
}

struct Reader<'a> {
    spec: &'a LearnerSpec,
}

impl Reader<'_> {
    fn err(&self, msg: String) -> Error {
        Error::invalid_hyper(self.spec.algorithm, msg)
    }

    fn get(&self, key: &str) -> Option<&ParamValue> {
        self.spec.hyperparameters.get(key)
    }

    fn usize_min(&self, key: &str, default: usize, min: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => match v.as_int() {
                Some(i) if i >= min as i64 => Ok(i as usize),
                _ => Err(self.err(format!("`{key}` must be an integer >= {min}, got {v}"))),
            },
        }
    }

    fn real(&self, key: &str, default: f64, ok: impl Fn(f64) -> bool, what: &str) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => match v.as_f64() {
                Some(x) if x.is_finite() && ok(x) => Ok(x),
                _ => Err(self.err(format!("`{key}` must be {what}, got {v}"))),
            },
        }
    }

    /// `0` or `"none"` mean unlimited.
    fn depth(&self, default: Option<usize>) -> Result<Option<usize>> {
        match self.get("max_depth") {
            None => Ok(default),
            Some(ParamValue::Text(t)) if t == "none" => Ok(None),
            Some(v) => match v.as_int() {
                Some(0) => Ok(None),
                Some(i) if i > 0 => Ok(Some(i as usize)),
                _ => Err(self.err(format!("`max_depth` must be a non-negative integer or \"none\", got {v}"))),
            },
        }
    }

    fn criterion(&self, default: Criterion) -> Result<Criterion> {
        match self.get("criterion") {
            None => Ok(default),
            Some(ParamValue::Text(t)) if t == "gini" => Ok(Criterion::Gini),
            Some(ParamValue::Text(t)) if t == "entropy" => Ok(Criterion::Entropy),
            Some(v) => Err(self.err(format!("`criterion` must be \"gini\" or \"entropy\", got {v}"))),
        }
    }

    /// `"sqrt"` is ceil(sqrt(d)), `"all"` or `0` uses every feature.
    fn max_features(&self, default_sqrt: bool, d: usize) -> Result<Option<usize>> {
        let sqrt = || Some(((d as f64).sqrt().ceil() as usize).max(1));
        match self.get("max_features") {
            None => Ok(if default_sqrt { sqrt() } else { None }),
            Some(ParamValue::Text(t)) if t == "sqrt" => Ok(sqrt()),
            Some(ParamValue::Text(t)) if t == "all" => Ok(None),
            Some(v) => match v.as_int() {
                Some(0) => Ok(None),
                Some(i) if i > 0 => Ok(Some(i as usize)),
                _ => Err(self.err(format!("`max_features` must be \"sqrt\", \"all\" or a positive integer, got {v}"))),
            },
        }
    }

    fn trees(&self, n_default: usize, crit: Criterion, sqrt: bool, d: usize) -> Result<TreeEnsembleParams> {
        Ok(TreeEnsembleParams {
            n_estimators: self.usize_min("n_estimators", n_default, 1)?,
            criterion: self.criterion(crit)?,
            max_depth: self.depth(None)?,
            min_samples_split: self.usize_min("min_samples_split", 2, 2)?,
            max_features: self.max_features(sqrt, d)?,
        })
    }

    fn sgd(&self) -> Result<SgdParams> {
        Ok(SgdParams {
            epochs: self.usize_min("epochs", 200, 1)?,
            eta0: self.real("eta0", 0.1, |v| v > 0.0, "positive")?,
            decay: self.real("decay", 1e-3, |v| v >= 0.0, "non-negative")?,
            alpha: self.real("alpha", 1e-4, |v| v >= 0.0, "non-negative")?,
        })
    }
}

impl FitParams {
    pub fn from_spec(spec: &LearnerSpec, n_features: usize) -> Result<Self> {
        let allowed = spec.algorithm.allowed_params();
        if let Some(k) = spec.hyperparameters.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::invalid_hyper(
                spec.algorithm,
                format!("unknown hyperparameter `{k}` (allowed: {})", allowed.join(", ")),
            ));
        }
        let r = Reader { spec };
        let d = n_features;
        let unit = |v: f64| v > 0.0 && v <= 1.0;
        Ok(match spec.algorithm {
            Algorithm::Cart => FitParams::Cart(TreeEnsembleParams {
                n_estimators: 1,
                ..r.trees(1, Criterion::Gini, false, d)?
            }),
            Algorithm::RandomForest => FitParams::RandomForest(r.trees(500, Criterion::Entropy, true, d)?),
            Algorithm::ExtraTrees => FitParams::ExtraTrees(r.trees(500, Criterion::Gini, true, d)?),
            Algorithm::Gbm => FitParams::Gbm(GbmParams {
                n_estimators: r.usize_min("n_estimators", 100, 1)?,
                learning_rate: r.real("learning_rate", 0.1, unit, "in (0, 1]")?,
                max_depth: r.depth(Some(3))?,
                min_samples_split: r.usize_min("min_samples_split", 2, 2)?,
            }),
            Algorithm::XgbStyle => FitParams::XgbStyle(XgbParams {
                n_estimators: r.usize_min("n_estimators", 500, 1)?,
                learning_rate: r.real("learning_rate", 0.1, unit, "in (0, 1]")?,
                max_depth: r.depth(Some(3))?,
                lambda: r.real("lambda", 1.0, |v| v >= 0.0, "non-negative")?,
                gamma: r.real("gamma", 0.0, |v| v >= 0.0, "non-negative")?,
                min_child_weight: r.real("min_child_weight", 1.0, |v| v >= 0.0, "non-negative")?,
            }),
            Algorithm::Adaboost => FitParams::Adaboost(AdaBoostParams {
                n_estimators: r.usize_min("n_estimators", 50, 1)?,
                learning_rate: r.real("learning_rate", 1.0, |v| v > 0.0, "positive")?,
            }),
            Algorithm::Knn => FitParams::Knn {
                k: r.usize_min("k", 9, 1)?,
            },
            Algorithm::NaiveBayes => FitParams::NaiveBayes {
                var_smoothing: r.real("var_smoothing", 1e-9, |v| v >= 0.0, "non-negative")?,
            },
            Algorithm::SgdLogistic => FitParams::SgdLogistic(r.sgd()?),
            Algorithm::LinearSvc => FitParams::LinearSvc(r.sgd()?),
            Algorithm::Mlp => FitParams::Mlp(MlpParams {
                hidden: r.usize_min("hidden", 16, 1)?,
                epochs: r.usize_min("epochs", 500, 1)?,
                learning_rate: r.real("learning_rate", 0.01, |v| v > 0.0, "positive")?,
                momentum: r.real("momentum", 0.9, |v| (0.0..1.0).contains(&v), "in [0, 1)")?,
                alpha: r.real("alpha", 1e-4, |v| v >= 0.0, "non-negative")?,
                activation: match r.get("activation") {
                    None => Activation::Tanh,
                    Some(ParamValue::Text(t)) if t == "tanh" => Activation::Tanh,
                    Some(ParamValue::Text(t)) if t == "relu" => Activation::Relu,
                    Some(v) => return Err(r.err(format!("`activation` must be \"tanh\" or \"relu\", got {v}"))),
                },
            }),
            Algorithm::Constant => FitParams::Constant {
                class: match r.usize_min("class", 1, 0)? {
                    c @ (0 | 1) => c as u8,
                    c => return Err(r.err(format!("`class` must be 0 or 1, got {c}"))),
                },
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = FitParams::from_spec(&LearnerSpec::new(Algorithm::RandomForest), 11).unwrap();
        match p {
            FitParams::RandomForest(t) => {
                assert_eq!(t.n_estimators, 500);
                assert_eq!(t.criterion, Criterion::Entropy);
                assert_eq!(t.max_features, Some(4));
                assert_eq!(t.max_depth, None);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            FitParams::from_spec(&LearnerSpec::new(Algorithm::Knn), 11).unwrap(),
            FitParams::Knn { k: 9 }
        );
    }

    #[test]
    fn rejects_bad_values() {
        for spec in [
            LearnerSpec::new(Algorithm::Knn).with("k", 0),
            LearnerSpec::new(Algorithm::Knn).with("neighbours", 3),
            LearnerSpec::new(Algorithm::Cart).with("criterion", "mse"),
            LearnerSpec::new(Algorithm::Gbm).with("learning_rate", 1.5),
            LearnerSpec::new(Algorithm::Mlp).with("momentum", 1.0),
            LearnerSpec::new(Algorithm::Constant).with("class", 2),
        ] {
            assert!(matches!(
                FitParams::from_spec(&spec, 11),
                Err(Error::InvalidHyperparameter { .. })
            ), "{spec:?}");
        }
    }
}
