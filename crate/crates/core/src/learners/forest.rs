use rand::Rng;
use serde::{Deserialize, Serialize};

use super::params::TreeEnsembleParams;
use super::tree::{grow_tree, CandidateMode, DecisionTree, NodeData, Objective, TreeParams};
use crate::data::Matrix;
use crate::{par, rng};

/// Bagged or extremely randomized classification trees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub trees: Vec<DecisionTree>,
}

impl Forest {
    /// Tree `i` draws from stream `i` of `seed`. With `bootstrap`, each tree
    /// sees a with-replacement resample (as integer row weights); otherwise
    /// every row once.
    pub fn fit(x: &Matrix, y: &[f64], p: &TreeEnsembleParams, mode: CandidateMode, bootstrap: bool, seed: u64) -> Self {
        let n = x.n_rows();
        let tp = TreeParams {
            objective: Objective::Class(p.criterion),
            max_depth: p.max_depth,
            min_samples_split: p.min_samples_split,
            max_features: p.max_features,
            mode,
        };
        let trees = par::map_range(p.n_estimators, |t| {
            let mut r = rng::stream(seed, t as u64);
            let mut w = vec![0.0; n];
            if bootstrap {
                for _ in 0..n {
                    w[r.random_range(0..n)] += 1.0;
                }
            } else {
                w.fill(1.0);
            }
            let rows: Vec<usize> = (0..n).filter(|&i| w[i] > 0.0).collect();
            let data = NodeData { x, target: y, weight: &w };
            grow_tree(&data, rows, &tp, &mut r)
        });
        Self { trees }
    }

    /// Mean of the trees' leaf class-1 probabilities.
    pub fn proba(&self, row: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.predict(row)).sum::<f64>() / self.trees.len() as f64
    }

    /// Strict majority of per-tree labels; a tied vote goes to the class with
    /// the higher mean probability, then class 0.
    pub fn majority_vote(&self, row: &[f64]) -> u8 {
        let ones = self.trees.iter().filter(|t| t.predict(row) >= 0.5).count();
        let zeros = self.trees.len() - ones;
        match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => u8::from(self.proba(row) > 0.5),
        }
    }
}
