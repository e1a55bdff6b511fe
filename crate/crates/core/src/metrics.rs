//! Confusion-matrix metrics and threshold-swept ROC / precision-recall curves.
//!
//! Class 1 is the positive class throughout. Metrics with a zero
//! denominator come back as `None` instead of being coerced to zero.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        Self { tp, tn, fp, fn_ }
    }

    pub fn from_labels(y_true: &[u8], y_pred: &[u8]) -> Result<Self> {
        if y_true.len() != y_pred.len() {
            return Err(Error::LengthMismatch(y_true.len(), y_pred.len()));
        }
        if y_true.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut cm = Self::default();
        for (&t, &p) in y_true.iter().zip(y_pred) {
            match (t, p) {
                (1, 1) => cm.tp += 1,
                (0, 0) => cm.tn += 1,
                (0, 1) => cm.fp += 1,
                (1, 0) => cm.fn_ += 1,
                _ => return Err(Error::NonBinaryLabel(if t > 1 { t } else { p })),
            }
        }
        Ok(cm)
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn report(&self) -> MetricReport {
        metric_report(self)
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

/// The seven scalar metrics. `None` marks an undefined value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub sensitivity: Option<f64>,
    pub specificity: Option<f64>,
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
    pub mcc: Option<f64>,
    /// Mean of sensitivity and specificity at the single 0.5 threshold.
    pub balanced_auc: Option<f64>,
}

impl MetricReport {
    pub const NAMES: [&'static str; 7] = [
        "accuracy",
        "precision",
        "sensitivity",
        "specificity",
        "f1",
        "balanced_auc",
        "mcc",
    ];

    /// Values in [`MetricReport::NAMES`] order.
    pub fn values(&self) -> [Option<f64>; 7] {
        [
            self.accuracy,
            self.precision,
            self.sensitivity,
            self.specificity,
            self.f1,
            self.balanced_auc,
            self.mcc,
        ]
    }

    pub fn undefined(&self) -> Vec<&'static str> {
        Self::NAMES
            .iter()
            .zip(self.values())
            .filter(|(_, v)| v.is_none())
            .map(|(n, _)| *n)
            .collect()
    }
}

pub fn metric_report(cm: &ConfusionMatrix) -> MetricReport {
    let (tp, tn, fp, fn_) = (cm.tp as f64, cm.tn as f64, cm.fp as f64, cm.fn_ as f64);
    let sensitivity = ratio(tp, tp + fn_);
    let specificity = ratio(tn, tn + fp);
    let den = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
    MetricReport {
        sensitivity,
        specificity,
        accuracy: ratio(tp + tn, tp + tn + fp + fn_),
        precision: ratio(tp, tp + fp),
        f1: ratio(2.0 * tp, 2.0 * tp + fp + fn_),
        mcc: (den > 0.0).then(|| ((tp * tn - fp * fn_) / den.sqrt()).clamp(-1.0, 1.0)),
        balanced_auc: match (sensitivity, specificity) {
            (Some(a), Some(b)) => Some(balanced_auc(a, b)),
            _ => None,
        },
    }
}

pub fn balanced_auc(sensitivity: f64, specificity: f64) -> f64 {
    (sensitivity + specificity) / 2.0
}

/// Percent with two decimals, the display precision of the results tables.
pub fn percent(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{:.2}", v * 100.0),
        None => "undefined".into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub threshold: f64,
    pub fpr: f64,
    pub tpr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub area: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrPoint {
    pub threshold: f64,
    pub recall: f64,
    pub precision: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrCurve {
    pub points: Vec<PrPoint>,
    pub average_precision: f64,
}

/// Cumulative (threshold, tp, fp) after each group of tied scores, highest
/// score first.
fn sweep(y_true: &[u8], scores: &[f64]) -> Result<Vec<(f64, u64, u64)>> {
    if y_true.len() != scores.len() {
        return Err(Error::LengthMismatch(y_true.len(), scores.len()));
    }
    if let Some(&b) = y_true.iter().find(|&&v| v > 1) {
        return Err(Error::NonBinaryLabel(b));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidArgument("scores contain NaN".into()));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut out = Vec::new();
    let (mut tp, mut fp) = (0u64, 0u64);
    for (pos, &i) in order.iter().enumerate() {
        if y_true[i] == 1 {
            tp += 1;
        } else {
            fp += 1;
        }
        let last = pos + 1 == order.len() || scores[order[pos + 1]] != scores[i];
        if last {
            out.push((scores[i], tp, fp));
        }
    }
    Ok(out)
}

/// Thresholds sweep the distinct scores from high to low, after a `+inf`
/// sentinel at (0, 0); the final point is (1, 1). Area by trapezoids.
pub fn roc_curve(y_true: &[u8], scores: &[f64]) -> Result<RocCurve> {
    let steps = sweep(y_true, scores)?;
    let p = y_true.iter().filter(|&&v| v == 1).count() as f64;
    let n = y_true.len() as f64 - p;
    if p == 0.0 || n == 0.0 {
        return Err(Error::SingleClass);
    }
    let mut points = vec![RocPoint {
        threshold: f64::INFINITY,
        fpr: 0.0,
        tpr: 0.0,
    }];
    for (t, tp, fp) in steps {
        points.push(RocPoint {
            threshold: t,
            fpr: fp as f64 / n,
            tpr: tp as f64 / p,
        });
    }
    let area = points
        .windows(2)
        .map(|w| (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr) / 2.0)
        .sum::<f64>()
        .clamp(0.0, 1.0);
    Ok(RocCurve { points, area })
}

/// Same sweep as [`roc_curve`], starting from a (recall 0, precision 1)
/// sentinel. `average_precision = sum (R_i - R_{i-1}) P_i`.
pub fn pr_curve(y_true: &[u8], scores: &[f64]) -> Result<PrCurve> {
    let steps = sweep(y_true, scores)?;
    let p = y_true.iter().filter(|&&v| v == 1).count() as f64;
    if p == 0.0 {
        return Err(Error::InvalidArgument("precision-recall needs at least one positive".into()));
    }
    let mut points = vec![PrPoint {
        threshold: f64::INFINITY,
        recall: 0.0,
        precision: 1.0,
    }];
    let mut ap = 0.0;
    for (t, tp, fp) in steps {
        let recall = tp as f64 / p;
        let precision = tp as f64 / (tp + fp) as f64;
        ap += (recall - points.last().map_or(0.0, |q| q.recall)) * precision;
        points.push(PrPoint {
            threshold: t,
            recall,
            precision,
        });
    }
    Ok(PrCurve {
        points,
        average_precision: ap,
    })
}

impl RocCurve {
    /// `threshold,fpr,tpr` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("threshold,fpr,tpr\n");
        for q in &self.points {
            let _ = writeln!(s, "{},{},{}", q.threshold, q.fpr, q.tpr);
        }
        s
    }

    pub fn area_line(&self) -> String {
        format!("area,{}\n", self.area)
    }
}

impl PrCurve {
    /// `threshold,recall,precision` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("threshold,recall,precision\n");
        for q in &self.points {
            let _ = writeln!(s, "{},{},{}", q.threshold, q.recall, q.precision);
        }
        s
    }

    pub fn area_line(&self) -> String {
        format!("average_precision,{}\n", self.average_precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_inverted() {
        let y = [1, 1, 0, 0];
        let cm = ConfusionMatrix::from_labels(&y, &y).unwrap();
        assert_eq!(cm, ConfusionMatrix::new(2, 2, 0, 0));
        let cm = ConfusionMatrix::from_labels(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(cm, ConfusionMatrix::new(0, 0, 1, 1));
        assert!(ConfusionMatrix::from_labels(&[1], &[1, 0]).is_err());
        assert!(matches!(ConfusionMatrix::from_labels(&[2], &[1]), Err(Error::NonBinaryLabel(2))));
    }

    #[test]
    fn published_row() {
        let r = metric_report(&ConfusionMatrix::new(115, 102, 10, 8));
        let (sens, spec) = (115.0 / 123.0, 102.0 / 112.0);
        let exact = [
            217.0 / 235.0,
            115.0 / 125.0,
            sens,
            spec,
            230.0 / 248.0,
            (sens + spec) / 2.0,
            (115.0 * 102.0 - 80.0) / (125.0f64 * 123.0 * 112.0 * 110.0).sqrt(),
        ];
        for (v, w) in r.values().iter().zip(exact) {
            assert!((v.unwrap() - w).abs() < 1e-15, "{v:?} vs {w}");
        }
        // the published table truncates to two decimals of a percent
        let shown = [92.34, 92.00, 93.49, 91.07, 92.74, 92.28, 84.64];
        for (v, s) in r.values().iter().zip(shown) {
            assert!(((v.unwrap() * 10000.0).floor() / 100.0 - s).abs() < 1e-9);
        }
    }

    #[test]
    fn symmetric_and_perfect() {
        for k in 1..6 {
            let r = metric_report(&ConfusionMatrix::new(k, k, k, k));
            assert_eq!(r.mcc, Some(0.0));
            assert_eq!(r.accuracy, Some(0.5));
        }
        let r = metric_report(&ConfusionMatrix::new(5, 5, 0, 0));
        assert!(r.values().iter().all(|v| *v == Some(1.0)));
    }

    #[test]
    fn degenerate_flags() {
        let r = metric_report(&ConfusionMatrix::new(0, 3, 0, 0));
        assert_eq!(r.sensitivity, None);
        assert_eq!(r.precision, None);
        assert_eq!(r.mcc, None);
        assert_eq!(r.balanced_auc, None);
        assert_eq!(r.specificity, Some(1.0));
        assert_eq!(r.undefined(), vec!["precision", "sensitivity", "f1", "balanced_auc", "mcc"]);
    }

    #[test]
    fn roc_extremes() {
        let y = [1, 0, 1, 0, 1];
        let s: Vec<f64> = y.iter().map(|&v| f64::from(v)).collect();
        assert_eq!(roc_curve(&y, &s).unwrap().area, 1.0);
        let inv: Vec<f64> = s.iter().map(|v| 1.0 - v).collect();
        assert_eq!(roc_curve(&y, &inv).unwrap().area, 0.0);
        assert!(roc_curve(&[1, 1], &[0.2, 0.3]).is_err());
    }

    #[test]
    fn pr_extremes() {
        let y = [1, 0, 1, 0, 0];
        let s: Vec<f64> = y.iter().map(|&v| f64::from(v)).collect();
        assert_eq!(pr_curve(&y, &s).unwrap().average_precision, 1.0);
        let c = pr_curve(&y, &[0.5; 5]).unwrap();
        assert_eq!(c.points.len(), 2);
        assert!((c.average_precision - 0.4).abs() < 1e-15);
        assert!(pr_curve(&[0, 0], &[0.1, 0.2]).is_err());
    }

    #[test]
    fn ties_collapse() {
        let c = roc_curve(&[1, 0, 1, 0], &[0.9, 0.5, 0.5, 0.1]).unwrap();
        assert_eq!(c.points.len(), 4);
        assert_eq!(c.area, 0.875);
    }
}
