use serde::{Deserialize, Serialize};

use super::{Dataset, Matrix};

/// Per-column z-scoring fitted on training data only.
///
/// Uses the population standard deviation. Constant columns are flagged,
/// recorded with `std = 1`, and passed through unchanged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub constant: Vec<bool>,
}

impl Standardizer {
    pub fn fit(x: &Matrix) -> Self {
        let n = x.n_rows().max(1) as f64;
        let d = x.n_cols();
        let mut mean = vec![0.0; d];
        for r in x.rows() {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for r in x.rows() {
            for j in 0..d {
                let c = r[j] - mean[j];
                var[j] += c * c;
            }
        }
        let mut std = Vec::with_capacity(d);
        let mut constant = Vec::with_capacity(d);
        for j in 0..d {
            let s = (var[j] / n).sqrt();
            // relative test so large-magnitude constant columns are caught
            let is_const = s <= 1e-12 * mean[j].abs().max(1.0);
            constant.push(is_const);
            std.push(if is_const { 1.0 } else { s });
        }
        Self { mean, std, constant }
    }

    pub fn fit_dataset(train: &Dataset) -> Self {
        Self::fit(train.features())
    }

    /// Z-scores non-constant columns; constant columns are left untouched.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        let mut out = x.clone();
        for i in 0..out.n_rows() {
            self.apply_row(out.row_mut(i));
        }
        out
    }

    pub fn apply_row(&self, row: &mut [f64]) {
        for (j, v) in row.iter_mut().enumerate() {
            if !self.constant[j] {
                *v = (*v - self.mean[j]) / self.std[j];
            }
        }
    }

    pub fn invert(&self, x: &Matrix) -> Matrix {
        let mut out = x.clone();
        for i in 0..out.n_rows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                if !self.constant[j] {
                    *v = *v * self.std[j] + self.mean[j];
                }
            }
        }
        out
    }

    pub fn n_features(&self) -> usize {
        self.mean.len()
    }
}
