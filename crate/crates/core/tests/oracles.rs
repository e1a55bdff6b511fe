mod common;

use common::*;
use heartstack::learners::tree::{best_split, CandidateMode, Criterion, NodeData, Objective};
use heartstack::learners::{
    cross_validate, example_gradient, example_objective, fit, k_fold_plan, mlp_gradient, mlp_n_params, mlp_objective,
    Activation, Algorithm, LearnerSpec, Loss,
};
use heartstack::metrics::{metric_report, pr_curve, roc_curve, ConfusionMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn best_split_matches_brute_force() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for case in 0..200 {
        let (x, y, w) = micro_instance(&mut r);
        let c = if case % 2 == 0 { Criterion::Gini } else { Criterion::Entropy };
        let rows: Vec<usize> = (0..x.n_rows()).collect();
        let features: Vec<usize> = (0..x.n_cols()).collect();
        let data = NodeData { x: &x, target: &y, weight: &w };
        let got = best_split(&data, &rows, &features, &Objective::Class(c), CandidateMode::Exhaustive, &mut r);
        let want = brute_best_split(&x, &y, &w, c);
        match (got, want) {
            (None, None) => {}
            (Some(g), Some((f, t, s))) => {
                assert_eq!(g.feature, f, "case {case}");
                assert!((g.threshold - t).abs() <= 1e-12, "case {case}: {} vs {t}", g.threshold);
                assert!((g.score - s).abs() <= 1e-12, "case {case}: {} vs {s}", g.score);
            }
            (g, w) => panic!("case {case}: {g:?} vs {w:?}"),
        }
    }
}

#[test]
fn roc_area_matches_mann_whitney() {
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let (y, s) = random_scores(&mut r);
        let area = roc_curve(&y, &s).unwrap().area;
        let mw = mann_whitney_auc(&y, &s);
        assert!((area - mw).abs() <= 1e-12, "{area} vs {mw}");
    }
}

#[test]
fn average_precision_matches_threshold_enumeration() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let (y, s) = random_scores(&mut r);
        let ap = pr_curve(&y, &s).unwrap().average_precision;
        let want = ap_by_enumeration(&y, &s);
        assert!((ap - want).abs() <= 1e-12, "{ap} vs {want}");
    }
}

#[test]
fn published_row_pins_a_unique_confusion_matrix() {
    // the printed values are truncated, not rounded
    assert_eq!(search_confusion(260, PUBLISHED_ROW, true), vec![[115, 8, 10, 102]]);
    assert!(search_confusion(260, PUBLISHED_ROW, false).is_empty());
    let m = metric_report(&ConfusionMatrix::new(115, 102, 10, 8));
    assert!((m.sensitivity.unwrap() - 115.0 / 123.0).abs() < 1e-15);
    assert!((m.specificity.unwrap() - 102.0 / 112.0).abs() < 1e-15);
}

#[test]
fn cart_memorizes_consistent_data() {
    let mut r = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let n = r.random_range(2..60);
        let d = r.random_range(1..5);
        let (x, y) = random_table(&mut r, n, d);
        let m = fit(&LearnerSpec::new(Algorithm::Cart), &x, &y).unwrap();
        assert_eq!(m.predict(&x).unwrap(), y);
    }
}

#[test]
fn mlp_gradient_matches_finite_differences() {
    let mut r = ChaCha8Rng::seed_from_u64(15);
    for case in 0..20 {
        let n = r.random_range(3..12);
        let d = r.random_range(1..5);
        let h = r.random_range(1..6);
        let (x, y) = random_table(&mut r, n, d);
        let y: Vec<f64> = y.iter().map(|&v| f64::from(v)).collect();
        let alpha = [0.0, 1e-3, 0.1][case % 3];
        let p: Vec<f64> = (0..mlp_n_params(d, h)).map(|_| r.random_range(-1.0..1.0)).collect();
        let a = mlp_gradient(&p, d, h, Activation::Tanh, &x, &y, alpha);
        let num = numeric_gradient(|q| mlp_objective(q, d, h, Activation::Tanh, &x, &y, alpha), &p, 1e-5);
        let e = worst_gradient_error(&a, &num);
        assert!(e <= 1e-4, "case {case}: {e}");
    }
}

#[test]
fn sgd_logistic_gradient_matches_finite_differences() {
    let mut r = ChaCha8Rng::seed_from_u64(16);
    for case in 0..20 {
        let d = r.random_range(1..8);
        let row: Vec<f64> = (0..d).map(|_| r.random_range(-3.0..3.0)).collect();
        let p: Vec<f64> = (0..=d).map(|_| r.random_range(-1.0..1.0)).collect();
        let y = f64::from(r.random_bool(0.5) as u8);
        let alpha = [0.0, 1e-4, 0.5][case % 3];
        let a = example_gradient(Loss::Logistic, &p, &row, y, alpha);
        let num = numeric_gradient(|q| example_objective(Loss::Logistic, q, &row, y, alpha), &p, 1e-5);
        let e = worst_gradient_error(&a, &num);
        assert!(e <= 1e-4, "case {case}: {e}");
    }
}

#[test]
fn boosting_training_loss_never_increases() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    for case in 0..10 {
        // leaves of at most 25 rows keep a 0.3 Newton step inside the
        // region where the logistic loss is guaranteed to drop
        let n = r.random_range(8..=25);
        let (x, y) = random_table(&mut r, n, 3);
        for (alg, lr) in [(Algorithm::Gbm, 0.3), (Algorithm::XgbStyle, 0.3), (Algorithm::Gbm, 0.05)] {
            let spec = LearnerSpec::new(alg).with("n_estimators", 30).with("learning_rate", lr);
            let m = fit(&spec, &x, &y).unwrap();
            assert_eq!(m.loss_trace.len(), 31);
            for w in m.loss_trace.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "case {case} {alg}: {} -> {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn cross_validation_matches_a_plain_loop() {
    let mut r = ChaCha8Rng::seed_from_u64(18);
    let (x, y) = random_table(&mut r, 30, 3);
    let plan = k_fold_plan(30, 3, 5, Some(&y)).unwrap();
    for alg in [Algorithm::Cart, Algorithm::Knn, Algorithm::NaiveBayes] {
        let spec = LearnerSpec::new(alg).with_seed(3);
        let cv = cross_validate(&spec, &x, &y, &plan).unwrap();
        for fold in 0..3 {
            let test: Vec<usize> = (0..30).filter(|&i| plan.assignments[i] == fold).collect();
            let train: Vec<usize> = (0..30).filter(|&i| plan.assignments[i] != fold).collect();
            let ty: Vec<u8> = train.iter().map(|&i| y[i]).collect();
            let m = fit(&spec, &x.select_rows(&train), &ty).unwrap();
            let pred = m.predict(&x.select_rows(&test)).unwrap();
            let hits = test.iter().zip(&pred).filter(|(&i, &p)| y[i] == p).count();
            assert_eq!(cv.fold_accuracies[fold], hits as f64 / test.len() as f64, "{alg} fold {fold}");
            let proba = m.predict_proba(&x.select_rows(&test)).unwrap();
            for (&i, &p) in test.iter().zip(&proba) {
                assert_eq!(cv.oof[i], p);
            }
        }
        let mean = cv.fold_accuracies.iter().sum::<f64>() / 3.0;
        assert!((cv.mean_accuracy - mean).abs() < 1e-15);
    }
}

#[test]
fn xgb_leaf_weight_example() {
    assert_eq!(heartstack::learners::tree::newton_leaf_weight(2.0, 1.0, 1.0), -1.0);
}
