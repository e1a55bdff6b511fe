use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{validate_schema, Dataset};
use crate::error::{Error, Result};

/// Outlier-removal rule set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum CleaningStrategy {
    None,
    /// Drop rows with a resting blood pressure of zero.
    DomainValidity,
    /// Domain validity, then drop rows with any numeric feature outside
    /// `[Q1 - k*IQR, Q3 + k*IQR]`.
    Iqr { multiplier: f64 },
    /// Domain validity plus the IQR rule, with the multiplier picked from
    /// [`IQR_GRID`] so the cleaned row count is closest to `target_rows`
    /// (ties go to the larger multiplier).
    IqrTargetRows { target_rows: usize },
}

impl CleaningStrategy {
    pub fn name(&self) -> String {
        match self {
            CleaningStrategy::None => "none".into(),
            CleaningStrategy::DomainValidity => "domain_validity".into(),
            CleaningStrategy::Iqr { multiplier } => format!("iqr({multiplier})"),
            CleaningStrategy::IqrTargetRows { target_rows } => format!("iqr_target_rows({target_rows})"),
        }
    }
}

/// Multipliers searched by [`CleaningStrategy::IqrTargetRows`].
pub const IQR_GRID: [f64; 19] = [
    1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5, 3.75, 4.0, 4.5, 5.0, 5.5, 6.0, 7.0, 8.0, 10.0, 20.0,
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CleaningReport {
    pub strategy: String,
    /// IQR multiplier actually applied.
    pub multiplier: Option<f64>,
    pub rows_input: usize,
    pub rows_removed: usize,
    /// Rows removed per rule; each row is charged to the first rule it fails.
    pub removal_reasons: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IqrSweepPoint {
    pub multiplier: f64,
    pub rows_remaining: usize,
}

/// Linear-interpolation quantile of sorted values.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

const BP: &str = "resting_blood_pressure";

fn domain_mask(ds: &Dataset) -> Vec<bool> {
    let j = ds.schema().feature_index(BP);
    ds.features()
        .rows()
        .map(|r| j.is_none_or(|j| r[j] != 0.0))
        .collect()
}

/// Per numeric feature: (column index, lower fence, upper fence) computed on
/// the rows kept by `keep`.
fn fences(ds: &Dataset, keep: &[bool], k: f64) -> Vec<(usize, f64, f64)> {
    let mut out = Vec::new();
    for (j, a) in ds.schema().features.iter().enumerate() {
        if a.is_nominal() {
            continue;
        }
        let mut v: Vec<f64> = ds
            .features()
            .rows()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(r, _)| r[j])
            .collect();
        if v.is_empty() {
            continue;
        }
        v.sort_by(f64::total_cmp);
        let q1 = quantile(&v, 0.25);
        let q3 = quantile(&v, 0.75);
        let iqr = q3 - q1;
        out.push((j, q1 - k * iqr, q3 + k * iqr));
    }
    out
}

fn iqr_pass(ds: &Dataset, keep: &mut [bool], k: f64, reasons: &mut BTreeMap<String, usize>) {
    let f = fences(ds, keep, k);
    for (i, row) in ds.features().rows().enumerate() {
        if !keep[i] {
            continue;
        }
        if let Some(&(j, _, _)) = f.iter().find(|&&(j, lo, hi)| row[j] < lo || row[j] > hi) {
            keep[i] = false;
            *reasons
                .entry(format!("iqr:{}", ds.schema().features[j].name))
                .or_default() += 1;
        }
    }
}

fn rows_after_iqr(ds: &Dataset, k: f64) -> usize {
    let mut keep = domain_mask(ds);
    iqr_pass(ds, &mut keep, k, &mut BTreeMap::new());
    keep.iter().filter(|&&k| k).count()
}

/// Rows remaining after domain validity + IQR for each multiplier.
pub fn iqr_sweep(ds: &Dataset, multipliers: &[f64]) -> Vec<IqrSweepPoint> {
    multipliers
        .iter()
        .map(|&m| IqrSweepPoint {
            multiplier: m,
            rows_remaining: rows_after_iqr(ds, m),
        })
        .collect()
}

pub fn clean(ds: &Dataset, strategy: &CleaningStrategy) -> Result<(Dataset, CleaningReport)> {
    let validation = validate_schema(ds);
    if !validation.valid {
        return Err(Error::InvalidArgument(format!(
            "cannot clean a dataset with {} schema violations",
            validation.violations.len()
        )));
    }
    let n = ds.len();
    let mut reasons = BTreeMap::new();
    let mut multiplier = None;
    let keep = match strategy {
        CleaningStrategy::None => vec![true; n],
        CleaningStrategy::DomainValidity | CleaningStrategy::Iqr { .. } | CleaningStrategy::IqrTargetRows { .. } => {
            let mut keep = domain_mask(ds);
            let dropped = keep.iter().filter(|&&k| !k).count();
            if dropped > 0 {
                reasons.insert("domain_validity".to_string(), dropped);
            }
            let k = match strategy {
                CleaningStrategy::Iqr { multiplier } => Some(*multiplier),
                CleaningStrategy::IqrTargetRows { target_rows } => {
                    let sweep = iqr_sweep(ds, &IQR_GRID);
                    sweep
                        .iter()
                        .min_by(|a, b| {
                            let da = a.rows_remaining.abs_diff(*target_rows);
                            let db = b.rows_remaining.abs_diff(*target_rows);
                            da.cmp(&db).then(b.multiplier.total_cmp(&a.multiplier))
                        })
                        .map(|p| p.multiplier)
                }
                _ => None,
            };
            if let Some(k) = k {
                if !(k.is_finite() && k >= 0.0) {
                    return Err(Error::InvalidArgument(format!("IQR multiplier {k}")));
                }
                iqr_pass(ds, &mut keep, k, &mut reasons);
                multiplier = Some(k);
            }
            keep
        }
    };
    let idx: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    if idx.is_empty() {
        return Err(Error::CleaningRemovesAll(n));
    }
    let cleaned = ds.select(&idx)?.with_cleaning(strategy.name());
    let report = CleaningReport {
        strategy: strategy.name(),
        multiplier,
        rows_input: n,
        rows_removed: n - idx.len(),
        removal_reasons: reasons,
    };
    Ok((cleaned, report))
}
