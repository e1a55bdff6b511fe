use std::cmp::Ordering;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{fit, LearnerSpec, ParamValue};
use crate::data::Matrix;
use crate::error::{Error, Result};
use crate::{par, rng};

/// Row-to-fold assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub assignments: Vec<usize>,
    pub seed: u64,
    pub stratified: bool,
}

impl FoldPlan {
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn fold_rows(&self, fold: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.assignments[i] == fold).collect()
    }

    pub fn train_rows(&self, fold: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.assignments[i] != fold).collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.k];
        for &f in &self.assignments {
            s[f] += 1;
        }
        s
    }
}

/// Shuffles each class with its own stream, lays the classes end to end,
/// and deals folds round-robin over the concatenation. Dealing continues
/// across the class boundary, so overall fold sizes differ by at most one
/// as well as per-class counts.
pub fn k_fold_plan(n: usize, k: usize, seed: u64, stratify_by: Option<&[u8]>) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("fold count must be at least 2, got {k}")));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("fold count {k} exceeds row count {n}")));
    }
    let groups: Vec<Vec<usize>> = match stratify_by {
        Some(y) => {
            if y.len() != n {
                return Err(Error::LengthMismatch(n, y.len()));
            }
            (0..2u8)
                .map(|c| (0..n).filter(|&i| y[i] == c).collect())
                .collect()
        }
        None => vec![(0..n).collect()],
    };
    let mut assignments = vec![0; n];
    let mut pos = 0;
    for (c, mut g) in groups.into_iter().enumerate() {
        g.shuffle(&mut rng::stream(seed, c as u64));
        for i in g {
            assignments[i] = pos % k;
            pos += 1;
        }
    }
    Ok(FoldPlan {
        k,
        assignments,
        seed,
        stratified: stratify_by.is_some(),
    })
}

/// Per-fold scores plus out-of-fold probabilities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    /// `oof[i]` is the class-1 probability for row `i` from the model that
    /// held out `oof_fold[i]`.
    pub oof: Vec<f64>,
    pub oof_fold: Vec<usize>,
}

/// Trains on all folds but one and scores the held-out fold, for each fold.
/// Standardization is refit inside every training fold by [`fit`].
pub fn cross_validate(spec: &LearnerSpec, x: &Matrix, y: &[u8], plan: &FoldPlan) -> Result<CvResult> {
    if plan.len() != x.n_rows() || y.len() != x.n_rows() {
        return Err(Error::LengthMismatch(plan.len(), x.n_rows()));
    }
    let per_fold = par::try_map_range(plan.k, |f| -> Result<(Vec<usize>, Vec<f64>)> {
        let tr = plan.train_rows(f);
        let te = plan.fold_rows(f);
        let ytr: Vec<u8> = tr.iter().map(|&i| y[i]).collect();
        let model = fit(spec, &x.select_rows(&tr), &ytr)?;
        let p = model.predict_proba(&x.select_rows(&te))?;
        Ok((te, p))
    })?;
    let mut oof = vec![0.0; x.n_rows()];
    let mut oof_fold = vec![0; x.n_rows()];
    let mut fold_accuracies = Vec::with_capacity(plan.k);
    for (f, (te, p)) in per_fold.into_iter().enumerate() {
        let mut correct = 0;
        for (&i, &pi) in te.iter().zip(&p) {
            oof[i] = pi;
            oof_fold[i] = f;
            if u8::from(pi >= 0.5) == y[i] {
                correct += 1;
            }
        }
        fold_accuracies.push(correct as f64 / te.len() as f64);
    }
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / plan.k as f64;
    Ok(CvResult {
        fold_accuracies,
        mean_accuracy,
        oof,
        oof_fold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    /// Values in grid declaration order.
    pub values: Vec<(String, ParamValue)>,
    pub mean_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub points: Vec<GridPoint>,
    pub best: usize,
}

impl GridSearchResult {
    pub fn best_point(&self) -> &GridPoint {
        &self.points[self.best]
    }

    pub fn best_spec(&self, template: &LearnerSpec) -> LearnerSpec {
        let mut s = template.clone();
        for (k, v) in &self.best_point().values {
            s.hyperparameters.insert(k.clone(), v.clone());
        }
        s
    }
}

/// Cross-validates every point of the Cartesian product of `grid`.
///
/// The best point has the highest mean accuracy; ties go to the smallest
/// values compared dimension by dimension in declaration order.
pub fn grid_search(
    template: &LearnerSpec,
    grid: &[(String, Vec<ParamValue>)],
    x: &Matrix,
    y: &[u8],
    plan: &FoldPlan,
) -> Result<GridSearchResult> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("grid has no dimensions".into()));
    }
    if let Some((name, _)) = grid.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::InvalidArgument(format!("grid dimension `{name}` is empty")));
    }
    let mut combos: Vec<Vec<(String, ParamValue)>> = vec![Vec::new()];
    for (name, values) in grid {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                values.iter().map(move |v| {
                    let mut c = c.clone();
                    c.push((name.clone(), v.clone()));
                    c
                })
            })
            .collect();
    }
    for c in &combos {
        let mut s = template.clone();
        for (k, v) in c {
            s.hyperparameters.insert(k.clone(), v.clone());
        }
        s.validate(x.n_cols())?;
    }
    let points = par::try_map_range(combos.len(), |i| -> Result<GridPoint> {
        let mut s = template.clone();
        for (k, v) in &combos[i] {
            s.hyperparameters.insert(k.clone(), v.clone());
        }
        let cv = cross_validate(&s, x, y, plan)?;
        Ok(GridPoint {
            values: combos[i].clone(),
            mean_accuracy: cv.mean_accuracy,
            fold_accuracies: cv.fold_accuracies,
        })
    })?;
    let mut best = 0;
    for i in 1..points.len() {
        let (a, b) = (&points[i], &points[best]);
        let better = match a.mean_accuracy.total_cmp(&b.mean_accuracy) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a
                .values
                .iter()
                .zip(&b.values)
                .map(|((_, va), (_, vb))| va.order(vb))
                .find(|o| *o != Ordering::Equal)
                == Some(Ordering::Less),
        };
        if better {
            best = i;
        }
    }
    Ok(GridSearchResult { points, best })
}
