use rand::seq::SliceRandom;

use super::Dataset;
use crate::error::{Error, Result};
use crate::rng;

/// Disjoint train/test partition of a dataset.
#[derive(Clone, Debug)]
pub struct SplitPair {
    pub train: Dataset,
    pub test: Dataset,
    /// Source row indices of each part, ascending.
    pub train_rows: Vec<usize>,
    pub test_rows: Vec<usize>,
    pub seed: u64,
    pub fraction: f64,
}

/// Per-class training quotas: floors of the exact proportional shares, with
/// the remainder handed out by largest fractional part (lower class first).
fn quotas(counts: [usize; 2], total_train: usize, fraction: f64) -> [usize; 2] {
    let exact = [counts[0] as f64 * fraction, counts[1] as f64 * fraction];
    let mut q = [exact[0].floor() as usize, exact[1].floor() as usize];
    let mut order = [0usize, 1];
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())));
    let mut rest = total_train.saturating_sub(q[0] + q[1]);
    for &c in order.iter().cycle().take(4) {
        if rest == 0 {
            break;
        }
        if q[c] < counts[c] {
            q[c] += 1;
            rest -= 1;
        }
    }
    q
}

/// Stratified, seeded train/test split. `|train| = round(fraction * n)` and
/// each class is within one row of exact proportionality.
pub fn stratified_split(ds: &Dataset, fraction: f64, seed: u64) -> Result<SplitPair> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!("split fraction {fraction} not in (0, 1)")));
    }
    let counts = ds.class_counts();
    for (c, &n) in counts.iter().enumerate() {
        if n < 2 {
            return Err(Error::TooFewInClass {
                class: c as u8,
                count: n,
                needed: 2,
            });
        }
    }
    let n = ds.len();
    let total_train = (fraction * n as f64).round() as usize;
    if total_train == 0 || total_train == n {
        return Err(Error::InvalidArgument(format!(
            "split fraction {fraction} of {n} rows leaves one side empty"
        )));
    }
    let q = quotas(counts, total_train, fraction);
    let mut train_rows = Vec::with_capacity(total_train);
    let mut test_rows = Vec::with_capacity(n - total_train);
    for class in 0..2u8 {
        let mut idx: Vec<usize> = (0..n).filter(|&i| ds.targets()[i] == class).collect();
        idx.shuffle(&mut rng::stream(seed, u64::from(class)));
        let (tr, te) = idx.split_at(q[class as usize]);
        train_rows.extend_from_slice(tr);
        test_rows.extend_from_slice(te);
    }
    train_rows.sort_unstable();
    test_rows.sort_unstable();
    Ok(SplitPair {
        train: ds.select(&train_rows)?,
        test: ds.select(&test_rows)?,
        train_rows,
        test_rows,
        seed,
        fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Matrix, Provenance, Schema};
    use proptest::prelude::*;

    fn ds(labels: &[u8]) -> Dataset {
        let rows: Vec<Vec<f64>> = (0..labels.len())
            .map(|i| {
                let mut r = vec![0.0; 11];
                r[0] = i as f64;
                r
            })
            .collect();
        Dataset::new(
            Schema::canonical(),
            Matrix::from_rows(&rows).unwrap(),
            labels.to_vec(),
            Provenance::default(),
        )
        .unwrap()
    }

    #[test]
    fn ten_rows_eighty_percent() {
        let d = ds(&[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        let s = stratified_split(&d, 0.8, 42).unwrap();
        assert_eq!(s.train.len(), 8);
        assert_eq!(s.train.class_counts(), [4, 4]);
        assert_eq!(s.test.class_counts(), [1, 1]);
        let again = stratified_split(&d, 0.8, 42).unwrap();
        assert_eq!(s.train_rows, again.train_rows);
        assert_eq!(s.train.features(), again.train.features());
    }

    #[test]
    fn test_size_for_1175_rows() {
        let labels: Vec<u8> = (0..1175).map(|i| u8::from(i % 17 < 9)).collect();
        let s = stratified_split(&ds(&labels), 0.8, 1).unwrap();
        assert_eq!(s.test.len(), 235);
    }

    #[test]
    fn tiny_class_rejected() {
        let d = ds(&[0, 0, 0, 1]);
        assert!(matches!(stratified_split(&d, 0.5, 0).unwrap_err(), Error::TooFewInClass { class: 1, .. }));
        assert!(stratified_split(&ds(&[0, 0, 1, 1]), 1.0, 0).is_err());
    }

    proptest! {
        #[test]
        fn partition_invariants(
            labels in proptest::collection::vec(0u8..2, 4..120),
            fraction in 0.05f64..0.95,
            seed in any::<u64>(),
        ) {
            let c = [labels.iter().filter(|&&l| l == 0).count(), labels.iter().filter(|&&l| l == 1).count()];
            prop_assume!(c[0] >= 2 && c[1] >= 2);
            let t = (fraction * labels.len() as f64).round() as usize;
            prop_assume!(t >= 1 && t < labels.len());
            let d = ds(&labels);
            let s = stratified_split(&d, fraction, seed).unwrap();
            let n = labels.len();
            prop_assert_eq!(s.train.len(), (fraction * n as f64).round() as usize);
            let mut all: Vec<usize> = s.train_rows.iter().chain(&s.test_rows).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            let tc = s.train.class_counts();
            for k in 0..2 {
                let exact = c[k] as f64 * fraction;
                prop_assert!((tc[k] as f64 - exact).abs() <= 1.0 + 1e-9, "class {} got {} exact {}", k, tc[k], exact);
            }
        }
    }
}
