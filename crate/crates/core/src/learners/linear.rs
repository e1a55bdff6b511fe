//! Linear models trained by per-example stochastic (sub)gradient descent.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::params::SgdParams;
use crate::data::Matrix;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Loss {
    Logistic,
    Hinge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub loss: Loss,
    pub weights: Vec<f64>,
    pub bias: f64,
}

/// Loss on one example for labels in {0, 1}, plus `alpha/2 * |w|^2`.
/// Parameters are `[w..., b]`.
pub fn example_objective(loss: Loss, params: &[f64], row: &[f64], y: f64, alpha: f64) -> f64 {
    let (w, b) = params.split_at(row.len());
    let m = dot(w, row) + b[0];
    let s = 2.0 * y - 1.0;
    let reg = 0.5 * alpha * dot(w, w);
    let z = s * m;
    reg + match loss {
        Loss::Logistic => {
            if z > 0.0 {
                (-z).exp().ln_1p()
            } else {
                -z + z.exp().ln_1p()
            }
        }
        Loss::Hinge => (1.0 - z).max(0.0),
    }
}

/// Gradient of [`example_objective`] (a subgradient for hinge at the kink).
pub fn example_gradient(loss: Loss, params: &[f64], row: &[f64], y: f64, alpha: f64) -> Vec<f64> {
    let d = row.len();
    let (w, b) = params.split_at(d);
    let m = dot(w, row) + b[0];
    let s = 2.0 * y - 1.0;
    let dm = match loss {
        Loss::Logistic => super::sigmoid(m) - y,
        Loss::Hinge => {
            if s * m < 1.0 {
                -s
            } else {
                0.0
            }
        }
    };
    let mut g: Vec<f64> = row.iter().zip(w).map(|(x, wi)| dm * x + alpha * wi).collect();
    g.push(dm);
    g
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearModel {
    /// Epoch `e` shuffles with stream `e` of `seed`; step size at update `t`
    /// is `eta0 / (1 + decay * t)`.
    pub fn fit(x: &Matrix, y: &[f64], loss: Loss, p: &SgdParams, seed: u64) -> Self {
        let d = x.n_cols();
        let mut params = vec![0.0; d + 1];
        let mut order: Vec<usize> = (0..x.n_rows()).collect();
        let mut t = 0u64;
        for e in 0..p.epochs {
            order.shuffle(&mut rng::stream(seed, e as u64));
            for &i in &order {
                let lr = p.eta0 / (1.0 + p.decay * t as f64);
                let g = example_gradient(loss, &params, x.row(i), y[i], p.alpha);
                for (w, gi) in params.iter_mut().zip(&g) {
                    *w -= lr * gi;
                }
                t += 1;
            }
        }
        let bias = params.pop().unwrap_or(0.0);
        Self { loss, weights: params, bias }
    }

    pub fn margin(&self, row: &[f64]) -> f64 {
        dot(&self.weights, row) + self.bias
    }

    pub fn proba(&self, row: &[f64]) -> f64 {
        super::sigmoid(self.margin(row))
    }
}
