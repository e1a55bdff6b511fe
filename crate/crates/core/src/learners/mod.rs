//! Base classifiers, the shared tree core, cross-validation and grid search.
//!
//! Every learner works on a dense feature [`Matrix`] with 0/1 labels and
//! exposes class-1 probabilities; labels are the probabilities thresholded
//! at 0.5.

mod adaboost;
mod boost;
mod cv;
mod forest;
mod knn;
mod linear;
mod mlp;
mod naive_bayes;
mod params;
mod spec;
pub mod tree;

pub use adaboost::AdaBoost;
pub use boost::{logistic_loss, BoostedTrees};
pub use cv::{cross_validate, grid_search, k_fold_plan, CvResult, FoldPlan, GridPoint, GridSearchResult};
pub use forest::Forest;
pub use knn::Knn;
pub use linear::{example_gradient, example_objective, LinearModel, Loss};
pub use mlp::{gradient as mlp_gradient, n_params as mlp_n_params, objective as mlp_objective, Mlp};
pub use naive_bayes::GaussianNb;
pub use params::{Activation, AdaBoostParams, FitParams, GbmParams, MlpParams, SgdParams, TreeEnsembleParams, XgbParams};
pub use spec::{Algorithm, Hyperparameters, LearnerSpec, ParamValue};

use serde::{Deserialize, Serialize};

use crate::data::{Matrix, Standardizer};
use crate::error::{Error, Result};
use crate::par;
use tree::CandidateMode;

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Algorithm-specific fitted state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FittedModel {
    Tree(tree::DecisionTree),
    Forest(Forest),
    Boosted(BoostedTrees),
    AdaBoost(AdaBoost),
    Knn(Knn),
    NaiveBayes(GaussianNb),
    Linear(LinearModel),
    Mlp(Mlp),
    Constant { class: u8 },
}

impl FittedModel {
    fn proba_row(&self, row: &[f64]) -> f64 {
        match self {
            FittedModel::Tree(t) => t.predict(row),
            FittedModel::Forest(f) => f.proba(row),
            FittedModel::Boosted(b) => sigmoid(b.margin(row)),
            FittedModel::AdaBoost(a) => a.proba(row),
            FittedModel::Knn(k) => k.proba(row),
            FittedModel::NaiveBayes(nb) => nb.proba(row),
            FittedModel::Linear(l) => l.proba(row),
            FittedModel::Mlp(m) => m.proba(row),
            FittedModel::Constant { class } => f64::from(*class),
        }
    }
}

/// An immutable fitted predictor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub spec: LearnerSpec,
    pub n_features: usize,
    pub standardizer: Option<Standardizer>,
    pub fitted: FittedModel,
    /// Training loss before the first and after each boosting stage.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loss_trace: Vec<f64>,
}

impl TrainedModel {
    fn check(&self, x: &Matrix) -> Result<()> {
        if x.n_cols() != self.n_features {
            return Err(Error::ShapeMismatch {
                expected: self.n_features,
                found: x.n_cols(),
            });
        }
        Ok(())
    }

    /// Class-1 probability of a single row (already in the training encoding).
    pub fn proba_one(&self, row: &[f64]) -> f64 {
        let p = match &self.standardizer {
            Some(s) => {
                let mut r = row.to_vec();
                s.apply_row(&mut r);
                self.fitted.proba_row(&r)
            }
            None => self.fitted.proba_row(row),
        };
        p.clamp(0.0, 1.0)
    }

    pub fn predict_proba(&self, x: &Matrix) -> Result<Vec<f64>> {
        self.check(x)?;
        Ok(par::map_range(x.n_rows(), |i| self.proba_one(x.row(i))))
    }

    pub fn predict(&self, x: &Matrix) -> Result<Vec<u8>> {
        Ok(self.predict_proba(x)?.into_iter().map(|p| u8::from(p >= 0.5)).collect())
    }

    /// Strict per-tree majority for forests; other models fall back to
    /// [`TrainedModel::predict`].
    pub fn predict_vote(&self, x: &Matrix) -> Result<Vec<u8>> {
        match &self.fitted {
            FittedModel::Forest(f) => {
                self.check(x)?;
                Ok(x.rows().map(|r| f.majority_vote(r)).collect())
            }
            _ => self.predict(x),
        }
    }
}

/// Fits `spec` on features `x` and labels `y`.
///
/// Standardization, when the algorithm needs it, is fitted here on `x`
/// and stored with the model.
pub fn fit(spec: &LearnerSpec, x: &Matrix, y: &[u8]) -> Result<TrainedModel> {
    if x.n_rows() != y.len() {
        return Err(Error::LengthMismatch(x.n_rows(), y.len()));
    }
    if x.n_rows() == 0 {
        return Err(Error::EmptyDataset);
    }
    if let Some(&bad) = y.iter().find(|&&v| v > 1) {
        return Err(Error::NonBinaryLabel(bad));
    }
    let params = FitParams::from_spec(spec, x.n_cols())?;
    let ones = y.iter().filter(|&&v| v == 1).count();
    if !matches!(params, FitParams::Constant { .. }) && (ones == 0 || ones == y.len()) {
        return Err(Error::SingleClass);
    }
    let standardizer = spec.needs_standardization().then(|| Standardizer::fit(x));
    let scaled;
    let x = match &standardizer {
        Some(s) => {
            scaled = s.apply(x);
            &scaled
        }
        None => x,
    };
    let yf: Vec<f64> = y.iter().map(|&v| f64::from(v)).collect();
    let seed = spec.seed;
    let mut loss_trace = Vec::new();
    let fitted = match params {
        FitParams::Cart(p) => {
            let tp = tree::TreeParams {
                objective: tree::Objective::Class(p.criterion),
                max_depth: p.max_depth,
                min_samples_split: p.min_samples_split,
                max_features: p.max_features,
                mode: CandidateMode::Exhaustive,
            };
            let w = vec![1.0; x.n_rows()];
            let data = tree::NodeData { x, target: &yf, weight: &w };
            let mut r = crate::rng::stream(seed, 0);
            FittedModel::Tree(tree::grow_tree(&data, (0..x.n_rows()).collect(), &tp, &mut r))
        }
        FitParams::RandomForest(p) => FittedModel::Forest(Forest::fit(x, &yf, &p, CandidateMode::Exhaustive, true, seed)),
        FitParams::ExtraTrees(p) => FittedModel::Forest(Forest::fit(x, &yf, &p, CandidateMode::RandomThreshold, false, seed)),
        FitParams::Gbm(p) => {
            let (m, trace) = BoostedTrees::fit_gbm(x, &yf, &p);
            loss_trace = trace;
            FittedModel::Boosted(m)
        }
        FitParams::XgbStyle(p) => {
            let (m, trace) = BoostedTrees::fit_xgb(x, &yf, &p);
            loss_trace = trace;
            FittedModel::Boosted(m)
        }
        FitParams::Adaboost(p) => FittedModel::AdaBoost(AdaBoost::fit(x, &yf, &p)),
        FitParams::Knn { k } => FittedModel::Knn(Knn {
            k,
            x: x.clone(),
            y: y.to_vec(),
        }),
        FitParams::NaiveBayes { var_smoothing } => FittedModel::NaiveBayes(GaussianNb::fit(x, y, var_smoothing)),
        FitParams::SgdLogistic(p) => FittedModel::Linear(LinearModel::fit(x, &yf, Loss::Logistic, &p, seed)),
        FitParams::LinearSvc(p) => FittedModel::Linear(LinearModel::fit(x, &yf, Loss::Hinge, &p, seed)),
        FitParams::Mlp(p) => FittedModel::Mlp(Mlp::fit(x, &yf, &p, seed)),
        FitParams::Constant { class } => FittedModel::Constant { class },
    };
    Ok(TrainedModel {
        spec: spec.clone(),
        n_features: x.n_cols(),
        standardizer,
        fitted,
        loss_trace,
    })
}
