mod common;

use common::*;
use heartstack::data::{FeatureEncoding, Schema};
use heartstack::ensemble::{fit_stack, StackingConfig};
use heartstack::learners::{fit, Algorithm, FittedModel, LearnerSpec};
use heartstack::model_store::{self, ModelFile, SchemaStamp, StoredModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stamp() -> SchemaStamp {
    SchemaStamp::new(&Schema::canonical(), FeatureEncoding::Codes)
}

#[test]
fn every_algorithm_round_trips_bit_for_bit() {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    let (x, y) = random_table(&mut r, 100, 11);
    let dir = tempfile::tempdir().unwrap();
    for &alg in Algorithm::BASE.iter().chain(&[Algorithm::Constant]) {
        let spec = match alg {
            Algorithm::XgbStyle | Algorithm::ExtraTrees | Algorithm::RandomForest => {
                LearnerSpec::new(alg).with("n_estimators", 20)
            }
            Algorithm::Mlp => LearnerSpec::new(alg).with("epochs", 50),
            _ => LearnerSpec::new(alg),
        };
        let m = fit(&spec, &x, &y).unwrap();
        let path = dir.path().join(format!("{alg}.model"));
        model_store::save(&path, &ModelFile::new(StoredModel::Single(Box::new(m.clone())), stamp())).unwrap();
        let back = model_store::load(&path).unwrap();
        let StoredModel::Single(b) = &back.model else { panic!() };
        assert_eq!(**b, m, "{alg}");
        let pa = m.predict_proba(&x).unwrap();
        let pb = b.predict_proba(&x).unwrap();
        assert!(pa.iter().zip(&pb).all(|(a, b)| a.to_bits() == b.to_bits()), "{alg}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(model_store::to_string(&back).unwrap(), text, "{alg}");
    }
}

#[test]
fn forest_keeps_all_trees() {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    let (x, y) = random_table(&mut r, 40, 3);
    let m = fit(&LearnerSpec::new(Algorithm::RandomForest).with("n_estimators", 500), &x, &y).unwrap();
    let text = model_store::to_string(&ModelFile::new(StoredModel::Single(Box::new(m)), stamp())).unwrap();
    let back = model_store::from_str(&text).unwrap();
    let StoredModel::Single(b) = back.model else { panic!() };
    let FittedModel::Forest(f) = b.fitted else { panic!() };
    assert_eq!(f.trees.len(), 500);
}

#[test]
fn stacked_model_has_one_section_per_base_plus_meta() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let (x, y) = random_table(&mut r, 60, 3);
    let cands: Vec<_> = [Algorithm::Cart, Algorithm::Knn, Algorithm::NaiveBayes, Algorithm::SgdLogistic]
        .into_iter()
        .map(LearnerSpec::new)
        .collect();
    let cfg = StackingConfig {
        top_n: 3,
        oof_folds: 4,
        ..StackingConfig::new(cands)
    };
    let sf = fit_stack(&cfg, &x, &y).unwrap();
    let text = model_store::to_string(&ModelFile::new(StoredModel::Stacked(Box::new(sf.model.clone())), stamp())).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["kind"], "stacked");
    assert_eq!(v["payload"]["bases"].as_array().unwrap().len(), 3);
    assert!(v["payload"]["meta"].is_object());
    let back = model_store::from_str(&text).unwrap();
    let StoredModel::Stacked(s) = back.model else { panic!() };
    assert_eq!(s.predict(&x).unwrap(), sf.model.predict(&x).unwrap());
}

#[test]
fn garbage_is_a_model_error() {
    for text in ["", "{", "[]", "{\"version\": \"one\"}", "{\"version\": 1, \"kind\": \"single\"}"] {
        let e = model_store::from_str(text).unwrap_err();
        assert_eq!(e.category(), "model", "{text}");
    }
}
