//! Seeded generator for heart-like tables with the canonical schema.
//!
//! Marginals loosely follow a mixed clinical cohort (mostly male, disease
//! rate near one half, many zero cholesterol readings) and every feature
//! carries some class signal. Intended for tests, benches and demos.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Normal;

use crate::data::{Dataset, Matrix, Provenance, Schema};
use crate::rng;

fn pick<R: Rng>(r: &mut R, codes: &[f64], weights: &[f64]) -> f64 {
    codes[WeightedIndex::new(weights).expect("positive weights").sample(r)]
}

fn normal<R: Rng>(r: &mut R, mean: f64, sd: f64) -> f64 {
    Normal::new(mean, sd).expect("finite parameters").sample(r)
}

/// One row per draw from stream `i` of `seed`, so prefixes agree across `n`.
pub fn heart_like(n: usize, seed: u64) -> Dataset {
    let mut data = Vec::with_capacity(n * 11);
    let mut targets = Vec::with_capacity(n);
    for i in 0..n {
        let r = &mut rng::stream(seed, i as u64);
        let sick = r.random_bool(0.53);
        let c = |a: f64, b: f64| if sick { a } else { b };
        let sex = f64::from(r.random_bool(c(0.9, 0.6)));
        let age = normal(r, c(56.0, 50.0), 9.0).clamp(28.0, 77.0).round();
        let cp = if sick {
            pick(r, &[1.0, 2.0, 3.0, 4.0], &[0.05, 0.05, 0.15, 0.75])
        } else {
            pick(r, &[1.0, 2.0, 3.0, 4.0], &[0.08, 0.35, 0.35, 0.22])
        };
        let bp = if r.random_bool(0.002) {
            0.0
        } else {
            normal(r, c(134.0, 130.0), 18.0).clamp(80.0, 200.0).round()
        };
        let chol = if r.random_bool(c(0.25, 0.05)) {
            0.0
        } else {
            normal(r, c(250.0, 235.0), 55.0).clamp(85.0, 600.0).round()
        };
        let fbs = f64::from(r.random_bool(c(0.3, 0.12)));
        let ecg = if sick {
            pick(r, &[0.0, 1.0, 2.0], &[0.55, 0.2, 0.25])
        } else {
            pick(r, &[0.0, 1.0, 2.0], &[0.65, 0.15, 0.2])
        };
        let hr = normal(r, c(128.0, 150.0), 22.0).clamp(60.0, 202.0).round();
        let angina = f64::from(r.random_bool(c(0.6, 0.14)));
        let oldpeak = (normal(r, c(1.3, 0.4), c(1.1, 0.7)).max(0.0) * 10.0).round() / 10.0;
        let slope = if sick {
            pick(r, &[0.0, 1.0, 2.0, 3.0], &[0.002, 0.2, 0.7, 0.1])
        } else {
            pick(r, &[0.0, 1.0, 2.0, 3.0], &[0.002, 0.75, 0.2, 0.05])
        };
        data.extend_from_slice(&[age, sex, cp, bp, chol, fbs, ecg, hr, angina, oldpeak, slope]);
        targets.push(u8::from(sick));
    }
    Dataset::new(
        Schema::canonical(),
        Matrix::new(n, 11, data).expect("11 values per row"),
        targets,
        Provenance {
            source: format!("synthetic(n={n}, seed={seed})"),
            cleaning: None,
        },
    )
    .expect("generated rows are valid")
}
