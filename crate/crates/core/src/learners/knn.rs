use serde::{Deserialize, Serialize};

use crate::data::Matrix;

/// Stores the (standardized) training rows; probability is the class-1
/// share among the `k` nearest by Euclidean distance, ties to the lower
/// training row index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    pub k: usize,
    pub x: Matrix,
    pub y: Vec<u8>,
}

impl Knn {
    pub fn neighbours(&self, row: &[f64]) -> Vec<usize> {
        let mut d: Vec<(f64, usize)> = self
            .x
            .rows()
            .enumerate()
            .map(|(i, r)| (r.iter().zip(row).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        let k = self.k.min(d.len());
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < d.len() {
            d.select_nth_unstable_by(k - 1, cmp);
            d.truncate(k);
        }
        d.sort_by(cmp);
        d.into_iter().map(|(_, i)| i).collect()
    }

    pub fn proba(&self, row: &[f64]) -> f64 {
        let nb = self.neighbours(row);
        nb.iter().filter(|&&i| self.y[i] == 1).count() as f64 / nb.len() as f64
    }
}
