use serde::{Deserialize, Serialize};

use super::params::AdaBoostParams;
use super::tree::{grow_tree, Criterion, DecisionTree, NodeData, TreeParams};
use super::sigmoid;
use crate::data::Matrix;
use crate::rng;

/// Two-class SAMME over depth-1 stumps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaBoost {
    pub stumps: Vec<DecisionTree>,
    pub alphas: Vec<f64>,
}

impl AdaBoost {
    pub fn fit(x: &Matrix, y: &[f64], p: &AdaBoostParams) -> Self {
        let n = x.n_rows();
        let mut w = vec![1.0 / n as f64; n];
        let tp = TreeParams {
            max_depth: Some(1),
            ..TreeParams::classification(Criterion::Gini)
        };
        let mut stumps = Vec::new();
        let mut alphas = Vec::new();
        let mut r = rng::master(0);
        for _ in 0..p.n_estimators {
            let data = NodeData { x, target: y, weight: &w };
            let stump = grow_tree(&data, (0..n).collect(), &tp, &mut r);
            let wrong: Vec<bool> = (0..n)
                .map(|i| (stump.predict(x.row(i)) >= 0.5) != (y[i] == 1.0))
                .collect();
            let total: f64 = w.iter().sum();
            let err = w.iter().zip(&wrong).filter(|(_, &b)| b).map(|(w, _)| w).sum::<f64>() / total;
            if err <= 0.0 {
                // perfect stump: it alone decides
                stumps.push(stump);
                alphas.push(1.0);
                break;
            }
            if err >= 0.5 {
                if stumps.is_empty() {
                    stumps.push(stump);
                    alphas.push(0.0);
                }
                break;
            }
            let alpha = p.learning_rate * ((1.0 - err) / err).ln();
            for (wi, &bad) in w.iter_mut().zip(&wrong) {
                if bad {
                    *wi *= alpha.exp();
                }
            }
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= s);
            stumps.push(stump);
            alphas.push(alpha);
        }
        Self { stumps, alphas }
    }

    /// Alpha-weighted vote in `[-1, 1]` (normalized by the alpha total).
    pub fn vote(&self, row: &[f64]) -> f64 {
        let total: f64 = self.alphas.iter().sum();
        if total <= 0.0 {
            return 0.0;
        }
        self.stumps
            .iter()
            .zip(&self.alphas)
            .map(|(s, a)| if s.predict(row) >= 0.5 { *a } else { -*a })
            .sum::<f64>()
            / total
    }

    pub fn proba(&self, row: &[f64]) -> f64 {
        sigmoid(2.0 * self.vote(row))
    }
}
