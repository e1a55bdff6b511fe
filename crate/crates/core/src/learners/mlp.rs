//! One-hidden-layer perceptron with a sigmoid output unit.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::params::{Activation, MlpParams};
use super::sigmoid;
use crate::data::Matrix;
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub n_inputs: usize,
    pub hidden: usize,
    pub activation: Activation,
    /// `[W1 (hidden x inputs, row-major), b1, w2, b2]`.
    pub params: Vec<f64>,
}

fn act(a: Activation, z: f64) -> f64 {
    match a {
        Activation::Tanh => z.tanh(),
        Activation::Relu => z.max(0.0),
    }
}

fn act_deriv(a: Activation, z: f64) -> f64 {
    match a {
        Activation::Tanh => 1.0 - z.tanh().powi(2),
        Activation::Relu => {
            if z > 0.0 {
                1.0
            } else {
                0.0
            }
        }
    }
}

pub fn n_params(d: usize, h: usize) -> usize {
    h * d + h + h + 1
}

fn output(params: &[f64], d: usize, h: usize, a: Activation, row: &[f64], hid: &mut [f64]) -> f64 {
    let (w1, rest) = params.split_at(h * d);
    let (b1, rest) = rest.split_at(h);
    let (w2, b2) = rest.split_at(h);
    let mut out = b2[0];
    for j in 0..h {
        let z = b1[j] + w1[j * d..(j + 1) * d].iter().zip(row).map(|(w, x)| w * x).sum::<f64>();
        hid[j] = z;
        out += w2[j] * act(a, z);
    }
    out
}

/// Mean logistic loss over all rows plus `alpha/2 * |weights|^2` (biases
/// unpenalized).
pub fn objective(params: &[f64], d: usize, h: usize, a: Activation, x: &Matrix, y: &[f64], alpha: f64) -> f64 {
    let mut hid = vec![0.0; h];
    let n = x.n_rows() as f64;
    let mut loss = 0.0;
    for (row, &t) in x.rows().zip(y) {
        let m = output(params, d, h, a, row, &mut hid);
        let softplus = if m > 0.0 { m + (-m).exp().ln_1p() } else { m.exp().ln_1p() };
        loss += softplus - t * m;
    }
    let w1 = &params[..h * d];
    let w2 = &params[h * d + h..h * d + 2 * h];
    loss / n + 0.5 * alpha * (w1.iter().chain(w2).map(|w| w * w).sum::<f64>())
}

/// Backpropagated gradient of [`objective`].
pub fn gradient(params: &[f64], d: usize, h: usize, a: Activation, x: &Matrix, y: &[f64], alpha: f64) -> Vec<f64> {
    let mut g = vec![0.0; params.len()];
    let mut hid = vec![0.0; h];
    let n = x.n_rows() as f64;
    let w2 = &params[h * d + h..h * d + 2 * h];
    for (row, &t) in x.rows().zip(y) {
        let m = output(params, d, h, a, row, &mut hid);
        let delta = (sigmoid(m) - t) / n;
        for j in 0..h {
            g[h * d + h + j] += delta * act(a, hid[j]);
            let dz = delta * w2[j] * act_deriv(a, hid[j]);
            g[h * d + j] += dz;
            for (k, xv) in row.iter().enumerate() {
                g[j * d + k] += dz * xv;
            }
        }
        g[h * d + 2 * h] += delta;
    }
    for i in 0..h * d {
        g[i] += alpha * params[i];
    }
    for j in 0..h {
        g[h * d + h + j] += alpha * params[h * d + h + j];
    }
    g
}

impl Mlp {
    /// Xavier-uniform weights from stream 0 of `seed`, zero biases, then
    /// full-batch gradient descent with classical momentum.
    pub fn fit(x: &Matrix, y: &[f64], p: &MlpParams, seed: u64) -> Self {
        let d = x.n_cols();
        let h = p.hidden;
        let mut r = rng::stream(seed, 0);
        let mut params = vec![0.0; n_params(d, h)];
        let l1 = (6.0 / (d + h) as f64).sqrt();
        for w in &mut params[..h * d] {
            *w = r.random_range(-l1..=l1);
        }
        let l2 = (6.0 / (h + 1) as f64).sqrt();
        for w in &mut params[h * d + h..h * d + 2 * h] {
            *w = r.random_range(-l2..=l2);
        }
        let mut vel = vec![0.0; params.len()];
        for _ in 0..p.epochs {
            let g = gradient(&params, d, h, p.activation, x, y, p.alpha);
            for ((w, v), gi) in params.iter_mut().zip(&mut vel).zip(&g) {
                *v = p.momentum * *v - p.learning_rate * gi;
                *w += *v;
            }
        }
        Self {
            n_inputs: d,
            hidden: h,
            activation: p.activation,
            params,
        }
    }

    pub fn proba(&self, row: &[f64]) -> f64 {
        let mut hid = vec![0.0; self.hidden];
        sigmoid(output(&self.params, self.n_inputs, self.hidden, self.activation, row, &mut hid))
    }
}
