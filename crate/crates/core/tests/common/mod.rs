//! Independent reference implementations used by the integration tests and
//! the acceptance binary. Each one is written the slow, literal way.

#![allow(dead_code)]

use heartstack::data::Matrix;
use heartstack::learners::tree::Criterion;
use rand::Rng;

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-8)
}

fn class_impurity(c: Criterion, y: &[f64], w: &[f64], rows: &[usize]) -> f64 {
    let total: f64 = rows.iter().map(|&i| w[i]).sum();
    let pos: f64 = rows.iter().filter(|&&i| y[i] == 1.0).map(|&i| w[i]).sum();
    let probs = [pos / total, (total - pos) / total];
    match c {
        Criterion::Gini => 1.0 - probs.iter().map(|p| p * p).sum::<f64>(),
        Criterion::Entropy => -probs.iter().filter(|&&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>(),
    }
}

/// Brute-force best split: every feature, every midpoint between distinct
/// values, impurities recomputed from scratch for both children.
pub fn brute_best_split(x: &Matrix, y: &[f64], w: &[f64], c: Criterion) -> Option<(usize, f64, f64)> {
    let rows: Vec<usize> = (0..x.n_rows()).collect();
    if rows.iter().all(|&i| y[i] == y[0]) {
        return None;
    }
    let total: f64 = w.iter().sum();
    let parent = class_impurity(c, y, w, &rows);
    let mut best: Option<(usize, f64, f64)> = None;
    for f in 0..x.n_cols() {
        let mut vals: Vec<f64> = rows.iter().map(|&i| x.get(i, f)).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        for pair in vals.windows(2) {
            let t = (pair[0] + pair[1]) / 2.0;
            let left: Vec<usize> = rows.iter().copied().filter(|&i| x.get(i, f) <= t).collect();
            let right: Vec<usize> = rows.iter().copied().filter(|&i| x.get(i, f) > t).collect();
            let wl: f64 = left.iter().map(|&i| w[i]).sum();
            let wr: f64 = right.iter().map(|&i| w[i]).sum();
            let score = parent - wl / total * class_impurity(c, y, w, &left) - wr / total * class_impurity(c, y, w, &right);
            // features and thresholds are visited in ascending order, so a
            // later candidate wins only when strictly better
            if best.is_none_or(|b| score > b.2 + 1e-12) {
                best = Some((f, t, score));
            }
        }
    }
    best
}

/// A small classification instance: at most 12 rows, 3 features, values on
/// a coarse grid so ties are common, positive weights.
pub fn micro_instance<R: Rng>(r: &mut R) -> (Matrix, Vec<f64>, Vec<f64>) {
    let n = r.random_range(2..=12);
    let d = r.random_range(1..=3);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| r.random_range(0..6) as f64 * 0.5).collect())
        .collect();
    let y: Vec<f64> = (0..n).map(|_| f64::from(r.random_bool(0.5) as u8)).collect();
    let w: Vec<f64> = (0..n).map(|_| r.random_range(1..=4) as f64).collect();
    (Matrix::from_rows(&rows).unwrap(), y, w)
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half.
pub fn mann_whitney_auc(y: &[u8], s: &[f64]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for i in 0..y.len() {
        for j in 0..y.len() {
            if y[i] == 1 && y[j] == 0 {
                pairs += 1.0;
                if s[i] > s[j] {
                    wins += 1.0;
                } else if s[i] == s[j] {
                    wins += 0.5;
                }
            }
        }
    }
    wins / pairs
}

/// Average precision by enumerating thresholds from high to low and
/// recounting the confusion matrix at each one.
pub fn ap_by_enumeration(y: &[u8], s: &[f64]) -> f64 {
    let mut thresholds = s.to_vec();
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();
    let pos = y.iter().filter(|&&v| v == 1).count() as f64;
    let mut prev_recall = 0.0;
    let mut ap = 0.0;
    for t in thresholds {
        let tp = (0..y.len()).filter(|&i| s[i] >= t && y[i] == 1).count() as f64;
        let pp = (0..y.len()).filter(|&i| s[i] >= t).count() as f64;
        let recall = tp / pos;
        ap += (recall - prev_recall) * (tp / pp);
        prev_recall = recall;
    }
    ap
}

pub fn random_scores<R: Rng>(r: &mut R) -> (Vec<u8>, Vec<f64>) {
    loop {
        let n = r.random_range(2..=40);
        let y: Vec<u8> = (0..n).map(|_| r.random_bool(0.5) as u8).collect();
        if y.contains(&0) && y.contains(&1) {
            let s = (0..n).map(|_| (r.random_range(0..10) as f64) / 10.0).collect();
            return (y, s);
        }
    }
}

/// Printed percentage (two decimals) of `num / den`, either truncated or
/// rounded half up, in hundredths of a percent.
fn printed(num: u64, den: u64, truncate: bool) -> Option<u64> {
    if den == 0 {
        return None;
    }
    Some(if truncate {
        num * 10_000 / den
    } else {
        (num * 20_000 + den) / (2 * den)
    })
}

fn printed_real(v: f64, truncate: bool) -> u64 {
    if truncate {
        (v * 10_000.0).floor() as u64
    } else {
        (v * 10_000.0).round() as u64
    }
}

/// The proposed model's published row, hundredths of a percent:
/// accuracy, precision, sensitivity, specificity, f1, balanced auc, mcc.
pub const PUBLISHED_ROW: [u64; 7] = [9234, 9200, 9349, 9107, 9274, 9228, 8464];

/// Every (tp, fn, fp, tn) with `tp+fn+fp+tn <= max_total` whose metrics print
/// as `target`.
pub fn search_confusion(max_total: u64, target: [u64; 7], truncate: bool) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for p in 1..max_total {
        for tp in 0..=p {
            let fn_ = p - tp;
            if printed(tp, p, truncate) != Some(target[2]) {
                continue;
            }
            for n in 1..=(max_total - p) {
                for tn in 0..=n {
                    let fp = n - tn;
                    if printed(tn, n, truncate) != Some(target[3])
                        || printed(tp + tn, p + n, truncate) != Some(target[0])
                        || printed(tp, tp + fp, truncate) != Some(target[1])
                        || printed(2 * tp, 2 * tp + fp + fn_, truncate) != Some(target[4])
                    {
                        continue;
                    }
                    let sens = tp as f64 / p as f64;
                    let spec = tn as f64 / n as f64;
                    let bal = (sens + spec) / 2.0;
                    let (tpf, tnf, fpf, fnf) = (tp as f64, tn as f64, fp as f64, fn_ as f64);
                    let mcc = (tpf * tnf - fpf * fnf) / ((tpf + fpf) * (tpf + fnf) * (tnf + fpf) * (tnf + fnf)).sqrt();
                    if printed_real(bal, truncate) == target[5] && printed_real(mcc, truncate) == target[6] {
                        out.push([tp, fn_, fp, tn]);
                    }
                }
            }
        }
    }
    out
}

/// Central differences of `f` at `p`.
pub fn numeric_gradient(f: impl Fn(&[f64]) -> f64, p: &[f64], step: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    (0..p.len())
        .map(|i| {
            q[i] = p[i] + step;
            let hi = f(&q);
            q[i] = p[i] - step;
            let lo = f(&q);
            q[i] = p[i];
            (hi - lo) / (2.0 * step)
        })
        .collect()
}

/// Worst relative error between analytic and numeric gradients, skipping
/// components where both are negligibly small.
pub fn worst_gradient_error(analytic: &[f64], numeric: &[f64]) -> f64 {
    analytic
        .iter()
        .zip(numeric)
        .filter(|(a, n)| a.abs().max(n.abs()) > 1e-7)
        .map(|(&a, &n)| rel_err(a, n))
        .fold(0.0, f64::max)
}

/// Random feature matrix with distinct rows and labels, `n` rows and `d`
/// continuous features.
pub fn random_table<R: Rng>(r: &mut R, n: usize, d: usize) -> (Matrix, Vec<u8>) {
    loop {
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| r.random_range(-2.0..2.0)).collect()).collect();
        let y: Vec<u8> = (0..n).map(|_| r.random_bool(0.5) as u8).collect();
        if y.contains(&0) && y.contains(&1) {
            return (Matrix::from_rows(&rows).unwrap(), y);
        }
    }
}

/// Rows drawn around two class centres so every learner has signal.
pub fn separable_table<R: Rng>(r: &mut R, n: usize, d: usize, gap: f64) -> (Matrix, Vec<u8>) {
    let y: Vec<u8> = (0..n).map(|i| (i % 2) as u8).collect();
    let rows: Vec<Vec<f64>> = y
        .iter()
        .map(|&c| {
            let centre = if c == 1 { gap } else { -gap };
            (0..d).map(|_| centre + r.random_range(-1.0..1.0)).collect()
        })
        .collect();
    (Matrix::from_rows(&rows).unwrap(), y)
}
