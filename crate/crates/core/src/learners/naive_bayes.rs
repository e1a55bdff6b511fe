use serde::{Deserialize, Serialize};

use super::sigmoid;
use crate::data::Matrix;

/// Gaussian naive Bayes evaluated in log space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    pub log_prior: [f64; 2],
    pub mean: [Vec<f64>; 2],
    pub var: [Vec<f64>; 2],
}

impl GaussianNb {
    /// Per-class variances get `var_smoothing * max column variance` added,
    /// which floors them away from zero.
    pub fn fit(x: &Matrix, y: &[u8], var_smoothing: f64) -> Self {
        let d = x.n_cols();
        let n = x.n_rows() as f64;
        let mut mean = [vec![0.0; d], vec![0.0; d]];
        let mut var = [vec![0.0; d], vec![0.0; d]];
        let mut count = [0.0f64; 2];
        for (r, &c) in x.rows().zip(y) {
            count[c as usize] += 1.0;
            for (m, v) in mean[c as usize].iter_mut().zip(r) {
                *m += v;
            }
        }
        for c in 0..2 {
            mean[c].iter_mut().for_each(|m| *m /= count[c].max(1.0));
        }
        for (r, &c) in x.rows().zip(y) {
            let c = c as usize;
            for j in 0..d {
                var[c][j] += (r[j] - mean[c][j]).powi(2);
            }
        }
        let mut max_var: f64 = 0.0;
        for j in 0..d {
            let col = x.column(j);
            let m = col.iter().sum::<f64>() / n;
            max_var = max_var.max(col.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n);
        }
        let eps = (var_smoothing * max_var).max(f64::MIN_POSITIVE);
        for c in 0..2 {
            var[c].iter_mut().for_each(|v| *v = *v / count[c].max(1.0) + eps);
        }
        Self {
            log_prior: [(count[0] / n).ln(), (count[1] / n).ln()],
            mean,
            var,
        }
    }

    pub fn joint_log_likelihood(&self, row: &[f64], c: usize) -> f64 {
        let mut ll = self.log_prior[c];
        for (j, &v) in row.iter().enumerate() {
            let s2 = self.var[c][j];
            ll += -0.5 * (2.0 * std::f64::consts::PI * s2).ln() - (v - self.mean[c][j]).powi(2) / (2.0 * s2);
        }
        ll
    }

    pub fn proba(&self, row: &[f64]) -> f64 {
        let l0 = self.joint_log_likelihood(row, 0);
        let l1 = self.joint_log_likelihood(row, 1);
        match (l0.is_finite(), l1.is_finite()) {
            (true, true) => sigmoid(l1 - l0),
            (false, true) => 1.0,
            (true, false) => 0.0,
            (false, false) => 0.5,
        }
    }
}
