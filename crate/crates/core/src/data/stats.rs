use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Dataset;

/// Pearson correlation; `None` when either column is constant.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len().min(y.len());
    if n < 2 {
        return None;
    }
    let mx = x[..n].iter().sum::<f64>() / n as f64;
    let my = y[..n].iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x[..n].iter().zip(&y[..n]) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub attribute: String,
    /// `None` flags an undefined coefficient (constant column).
    pub coefficient: Option<f64>,
}

/// Correlation of each feature with the target, in schema order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTable {
    pub entries: Vec<CorrelationEntry>,
}

impl CorrelationTable {
    pub fn get(&self, attribute: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.attribute == attribute)
            .and_then(|e| e.coefficient)
    }

    /// Entries ordered by descending coefficient; undefined entries last.
    pub fn ranked(&self) -> Vec<CorrelationEntry> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| match (a.coefficient, b.coefficient) {
            (Some(x), Some(y)) => y.total_cmp(&x),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
        v
    }
}

/// Pearson coefficient of every feature (nominal codes as integers) with the
/// 0/1 target.
pub fn correlation_with_target(ds: &Dataset) -> CorrelationTable {
    let y: Vec<f64> = ds.targets().iter().map(|&t| f64::from(t)).collect();
    let entries = ds
        .schema()
        .features
        .iter()
        .enumerate()
        .map(|(j, a)| CorrelationEntry {
            attribute: a.name.clone(),
            coefficient: pearson(&ds.features().column(j), &y),
        })
        .collect();
    CorrelationTable { entries }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub columns: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

/// Symmetric correlation matrix over the eleven features and the target
/// (last row/column).
pub fn correlation_matrix(ds: &Dataset) -> CorrelationMatrix {
    let mut columns: Vec<String> = ds.schema().features.iter().map(|a| a.name.clone()).collect();
    columns.push(ds.schema().target.name.clone());
    let data: Vec<Vec<f64>> = columns.iter().map(|c| ds.column(c).expect("schema column")).collect();
    let m = columns.len();
    let mut values = vec![vec![None; m]; m];
    for i in 0..m {
        let constant = pearson(&data[i], &data[i]).is_none();
        values[i][i] = if constant { None } else { Some(1.0) };
        for j in 0..i {
            // target is always the second argument so its row matches
            // correlation_with_target bit for bit
            let r = pearson(&data[j], &data[i]);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    CorrelationMatrix { columns, values }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NominalCount {
    pub code: i64,
    pub target_0: usize,
    pub target_1: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NominalCounts {
    pub attribute: String,
    pub counts: Vec<NominalCount>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub attribute: String,
    /// `bins + 1` equal-width edges from the column minimum to maximum.
    pub edges: Vec<f64>,
    pub target_0: Vec<usize>,
    pub target_1: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeByAge {
    pub age_decade: i64,
    pub st_slope: i64,
    pub target_0: usize,
    pub target_1: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub rows: usize,
    pub class_counts: [usize; 2],
    pub male_fraction: Option<f64>,
    pub female_fraction: Option<f64>,
    pub nominal_counts: Vec<NominalCounts>,
    pub histograms: Vec<Histogram>,
    pub st_slope_by_age: Vec<SlopeByAge>,
}

pub const DEFAULT_BINS: usize = 20;

fn histogram(name: &str, col: &[f64], targets: &[u8], bins: usize) -> Histogram {
    let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / bins as f64;
    let edges = (0..=bins).map(|b| lo + width * b as f64).collect();
    let mut counts = [vec![0; bins], vec![0; bins]];
    for (&v, &t) in col.iter().zip(targets) {
        let b = if width > 0.0 {
            (((v - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[t as usize][b] += 1;
    }
    let [target_0, target_1] = counts;
    Histogram {
        attribute: name.into(),
        edges,
        target_0,
        target_1,
    }
}

/// Class balance, per-attribute distributions split by target, and the
/// st_slope by age-decade table.
pub fn summarize(ds: &Dataset, bins: usize) -> SummaryReport {
    let bins = bins.max(1);
    let schema = ds.schema();
    let t = ds.targets();
    let n = ds.len();
    let mut nominal_counts = Vec::new();
    let mut histograms = Vec::new();
    for (j, a) in schema.features.iter().enumerate() {
        let col = ds.features().column(j);
        if a.is_nominal() {
            let mut m: BTreeMap<i64, [usize; 2]> = a.allowed_codes.iter().map(|&c| (c, [0, 0])).collect();
            for (&v, &y) in col.iter().zip(t) {
                m.entry(v as i64).or_default()[y as usize] += 1;
            }
            nominal_counts.push(NominalCounts {
                attribute: a.name.clone(),
                counts: m
                    .into_iter()
                    .map(|(code, [target_0, target_1])| NominalCount { code, target_0, target_1 })
                    .collect(),
            });
        } else {
            histograms.push(histogram(&a.name, &col, t, bins));
        }
    }
    let (male_fraction, female_fraction) = match ds.column("sex") {
        Some(sex) => {
            let males = sex.iter().filter(|&&v| v == 1.0).count() as f64;
            let females = sex.iter().filter(|&&v| v == 0.0).count() as f64;
            (Some(males / n as f64), Some(females / n as f64))
        }
        None => (None, None),
    };
    let mut slope: BTreeMap<(i64, i64), [usize; 2]> = BTreeMap::new();
    if let (Some(age), Some(st)) = (ds.column("age"), ds.column("st_slope")) {
        for ((a, s), &y) in age.iter().zip(&st).zip(t) {
            let decade = (a / 10.0).floor() as i64 * 10;
            slope.entry((decade, *s as i64)).or_default()[y as usize] += 1;
        }
    }
    SummaryReport {
        rows: n,
        class_counts: ds.class_counts(),
        male_fraction,
        female_fraction,
        nominal_counts,
        histograms,
        st_slope_by_age: slope
            .into_iter()
            .map(|((age_decade, st_slope), [target_0, target_1])| SlopeByAge {
                age_decade,
                st_slope,
                target_0,
                target_1,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Matrix, Provenance, Schema};

    fn ds(rows: &[[f64; 11]], t: &[u8]) -> Dataset {
        Dataset::new(Schema::canonical(), Matrix::from_rows(rows).unwrap(), t.to_vec(), Provenance::default()).unwrap()
    }

    fn row(age: f64, sex: f64, slope: f64) -> [f64; 11] {
        [age, sex, 2.0, 130.0, 220.0, 0.0, 0.0, 150.0, 0.0, 0.5, slope]
    }

    #[test]
    fn self_correlation_and_constant() {
        let x = [1.0, 2.0, 4.0, 7.0];
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(pearson(&[3.0; 4], &x), None);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson(&x, &neg).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn feature_equal_to_target_correlates_one() {
        let d = ds(&[row(40.0, 0.0, 1.0), row(50.0, 1.0, 2.0), row(60.0, 1.0, 2.0), row(45.0, 0.0, 1.0)], &[0, 1, 1, 0]);
        let c = correlation_with_target(&d);
        assert!((c.get("sex").unwrap() - 1.0).abs() < 1e-12);
        // constant columns are flagged, not zero
        assert_eq!(c.entries.iter().find(|e| e.attribute == "cholesterol").unwrap().coefficient, None);
    }

    #[test]
    fn matrix_symmetric_with_unit_diagonal() {
        let d = ds(&[row(40.0, 0.0, 1.0), row(50.0, 1.0, 2.0), row(61.0, 1.0, 3.0), row(45.0, 1.0, 1.0)], &[0, 1, 1, 0]);
        let m = correlation_matrix(&d);
        let c = correlation_with_target(&d);
        let k = m.columns.len();
        assert_eq!(k, 12);
        for i in 0..k {
            for j in 0..k {
                assert_eq!(m.values[i][j], m.values[j][i]);
            }
            if m.values[i][i].is_some() {
                assert_eq!(m.values[i][i], Some(1.0));
            }
        }
        for (j, e) in c.entries.iter().enumerate() {
            assert_eq!(m.values[k - 1][j], e.coefficient);
        }
    }

    #[test]
    fn summary_counts() {
        let d = ds(&[row(40.0, 1.0, 1.0), row(52.0, 0.0, 2.0)], &[0, 1]);
        let s = summarize(&d, DEFAULT_BINS);
        assert_eq!(s.class_counts, [1, 1]);
        assert_eq!(s.male_fraction, Some(0.5));
        for h in &s.histograms {
            assert_eq!(h.target_0.iter().sum::<usize>() + h.target_1.iter().sum::<usize>(), 2);
            assert_eq!(h.edges.len(), DEFAULT_BINS + 1);
        }
        assert_eq!(s.st_slope_by_age.len(), 2);
    }

    #[test]
    fn single_row_has_one_nonzero_bin() {
        let d = ds(&[row(40.0, 1.0, 1.0)], &[1]);
        let s = summarize(&d, DEFAULT_BINS);
        for h in &s.histograms {
            let nonzero = h.target_0.iter().zip(&h.target_1).filter(|(a, b)| **a + **b > 0).count();
            assert_eq!(nonzero, 1);
        }
    }
}
