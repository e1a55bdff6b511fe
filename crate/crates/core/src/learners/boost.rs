//! Stagewise boosted trees for logistic loss.

use serde::{Deserialize, Serialize};

use super::params::{GbmParams, XgbParams};
use super::tree::{grow_tree, CandidateMode, DecisionTree, NodeData, Objective, TreeParams};
use super::sigmoid;
use crate::data::Matrix;
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostedTrees {
    pub base_margin: f64,
    pub learning_rate: f64,
    pub trees: Vec<DecisionTree>,
}

/// Mean logistic loss of margins `f` against labels `y`.
pub fn logistic_loss(f: &[f64], y: &[f64]) -> f64 {
    f.iter()
        .zip(y)
        .map(|(&m, &t)| {
            // log(1 + e^m) - t*m, stable for large |m|
            let softplus = if m > 0.0 { m + (-m).exp().ln_1p() } else { m.exp().ln_1p() };
            softplus - t * m
        })
        .sum::<f64>()
        / f.len() as f64
}

impl BoostedTrees {
    pub fn margin(&self, row: &[f64]) -> f64 {
        self.base_margin + self.learning_rate * self.trees.iter().map(|t| t.predict(row)).sum::<f64>()
    }

    /// First-order boosting: each stage fits a variance-reduction tree with
    /// mean leaves to the residuals `y - p`. Returns the model and the
    /// training loss before the first stage and after every stage.
    pub fn fit_gbm(x: &Matrix, y: &[f64], p: &GbmParams) -> (Self, Vec<f64>) {
        let n = x.n_rows();
        let rate = (y.iter().sum::<f64>() / n as f64).clamp(1e-12, 1.0 - 1e-12);
        let base = (rate / (1.0 - rate)).ln();
        let tp = TreeParams {
            objective: Objective::Variance,
            max_depth: p.max_depth,
            min_samples_split: p.min_samples_split,
            max_features: None,
            mode: CandidateMode::Exhaustive,
        };
        let ones = vec![1.0; n];
        let mut f = vec![base; n];
        let mut trace = vec![logistic_loss(&f, y)];
        let mut trees = Vec::with_capacity(p.n_estimators);
        let mut r = rng::master(0);
        for _ in 0..p.n_estimators {
            let resid: Vec<f64> = f.iter().zip(y).map(|(&m, &t)| t - sigmoid(m)).collect();
            let data = NodeData {
                x,
                target: &resid,
                weight: &ones,
            };
            let tree = grow_tree(&data, (0..n).collect(), &tp, &mut r);
            for (i, fi) in f.iter_mut().enumerate() {
                *fi += p.learning_rate * tree.predict(x.row(i));
            }
            trace.push(logistic_loss(&f, y));
            trees.push(tree);
        }
        (
            Self {
                base_margin: base,
                learning_rate: p.learning_rate,
                trees,
            },
            trace,
        )
    }

    /// Second-order boosting from a zero margin: trees split on the
    /// regularized gain of gradient/hessian sums and output `-G/(H+lambda)`.
    pub fn fit_xgb(x: &Matrix, y: &[f64], p: &XgbParams) -> (Self, Vec<f64>) {
        let n = x.n_rows();
        let tp = TreeParams {
            objective: Objective::Newton {
                lambda: p.lambda,
                gamma: p.gamma,
                min_child_weight: p.min_child_weight,
            },
            max_depth: p.max_depth,
            min_samples_split: 2,
            max_features: None,
            mode: CandidateMode::Exhaustive,
        };
        let mut f = vec![0.0; n];
        let mut trace = vec![logistic_loss(&f, y)];
        let mut trees = Vec::with_capacity(p.n_estimators);
        let mut r = rng::master(0);
        let mut grad = vec![0.0; n];
        let mut hess = vec![0.0; n];
        for _ in 0..p.n_estimators {
            for i in 0..n {
                let pr = sigmoid(f[i]);
                grad[i] = pr - y[i];
                hess[i] = (pr * (1.0 - pr)).max(1e-16);
            }
            let data = NodeData {
                x,
                target: &grad,
                weight: &hess,
            };
            let tree = grow_tree(&data, (0..n).collect(), &tp, &mut r);
            for (i, fi) in f.iter_mut().enumerate() {
                *fi += p.learning_rate * tree.predict(x.row(i));
            }
            trace.push(logistic_loss(&f, y));
            trees.push(tree);
        }
        (
            Self {
                base_margin: 0.0,
                learning_rate: p.learning_rate,
                trees,
            },
            trace,
        )
    }
}
