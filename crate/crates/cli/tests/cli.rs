use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use heartstack::synthetic::heart_like;

fn heartstack(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heartstack"))
        .args(args)
        .current_dir(dir)
        .env_remove("HEART_CSV")
        .output()
        .expect("run heartstack")
}

const SMALL: &str = r#"
out = "out"
seed = 4
split_fraction = 0.8
folds = 3
cleaning = { strategy = "iqr", multiplier = 3.0 }
candidates = [
    { algorithm = "cart", hyperparameters = { max_depth = 4 } },
    { algorithm = "knn", grid = [{ name = "k", values = [3, 5] }] },
    { algorithm = "naive_bayes" },
]
stacking = { top_n = 2, meta = { algorithm = "sgd_logistic" } }
"#;

fn setup(rows: usize) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("heart.csv"), heart_like(rows, 2).to_csv()).unwrap();
    fs::write(dir.path().join("small.toml"), SMALL).unwrap();
    dir
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

#[test]
fn config_prints_defaults_as_toml() {
    let dir = tempfile::tempdir().unwrap();
    let o = heartstack(&["config", "--seed", "7"], dir.path());
    assert!(o.status.success());
    let s = text(&o.stdout);
    assert!(s.contains("seed = 7"), "{s}");
    assert!(s.contains("split_fraction = 0.8"), "{s}");
}

#[test]
fn full_run_then_predict() {
    let dir = setup(200);
    let args = ["--config", "small.toml", "--dataset", "heart.csv"];
    let o = heartstack(&[&args[..], &["run"]].concat(), dir.path());
    assert!(o.status.success(), "{}", text(&o.stderr));
    let s = text(&o.stdout);
    assert!(s.lines().any(|l| l.starts_with("stacked")), "{s}");
    for f in ["out/models/stack.model", "out/evaluation/metrics.csv", "out/baseline/baseline.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }

    let o = heartstack(
        &["predict", "--model", "out/models/stack.model", "--input", "heart.csv", "--output", "p.csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", text(&o.stderr));
    let p = fs::read_to_string(dir.path().join("p.csv")).unwrap();
    assert_eq!(p.lines().count(), 201);
    let m: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("p.csv.metrics.json")).unwrap()).unwrap();
    assert!(m["accuracy"].as_f64().unwrap() > 0.5);
}

#[test]
fn missing_dataset_is_a_config_error() {
    let dir = setup(10);
    let o = heartstack(&["--config", "small.toml", "analyze"], dir.path());
    assert_eq!(o.status.code(), Some(5));
    assert!(text(&o.stderr).starts_with("error[config]"), "{}", text(&o.stderr));
}

#[test]
fn bad_cell_is_a_data_error() {
    let dir = setup(10);
    let csv = fs::read_to_string(dir.path().join("heart.csv")).unwrap();
    let mut lines: Vec<String> = csv.lines().map(String::from).collect();
    let mut cells: Vec<&str> = lines[2].split(',').collect();
    cells[1] = "abc";
    lines[2] = cells.join(",");
    fs::write(dir.path().join("bad.csv"), lines.join("\n")).unwrap();
    let o = heartstack(&["--config", "small.toml", "--dataset", "bad.csv", "analyze"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let e = text(&o.stderr);
    assert!(e.contains("line 3") && e.contains("sex"), "{e}");
}

#[test]
fn corrupt_model_is_a_model_error() {
    let dir = setup(10);
    fs::write(dir.path().join("x.model"), "{\"version\": 99}").unwrap();
    let o = heartstack(&["predict", "--model", "x.model", "--input", "heart.csv"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert!(text(&o.stderr).contains("version 99"), "{}", text(&o.stderr));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = setup(10);
    fs::write(dir.path().join("bad.toml"), format!("{SMALL}\nbogus = 1\n")).unwrap();
    let o = heartstack(&["--config", "bad.toml", "config"], dir.path());
    assert_eq!(o.status.code(), Some(5));
    assert!(text(&o.stderr).contains("bogus"), "{}", text(&o.stderr));
}
