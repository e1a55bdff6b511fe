//! The end-to-end workflow behind the command-line tool.
//!
//! Each command reads the dataset named by the config, repeats the same
//! seeded clean and split, and writes into a fixed layout under `out`:
//!
//! ```text
//! analysis/    validation.json cleaning.json summary.json correlation.json
//!              correlation_matrix.csv histograms.csv nominal_counts.csv
//!              st_slope_by_age.csv
//! baseline/    baseline.csv grid_search.json comparison.csv
//! models/      stack.model selection.json baseline/<name>.model
//! evaluation/  metrics.csv metrics.json roc_<name>.csv roc_<name>.area
//!              pr_<name>.csv pr_<name>.area literature.csv seeds.csv
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::PipelineConfig;
use crate::data::{
    clean, correlation_matrix, correlation_with_target, iqr_sweep, parse_csv_path, parse_scoring_csv,
    stratified_split, summarize, validate_schema, CleaningReport, Dataset, Matrix, SplitPair, ValidationReport,
    DEFAULT_BINS, IQR_GRID,
};
use crate::ensemble::{fit_stack, StackFit, StackedModel};
use crate::error::{Error, Result};
use crate::learners::{cross_validate, fit, grid_search, k_fold_plan, GridSearchResult, LearnerSpec, TrainedModel};
use crate::metrics::{metric_report, percent, pr_curve, roc_curve, ConfusionMatrix, MetricReport};
use crate::model_store::{self, ModelFile, SchemaStamp, StoredModel};
use crate::{literature, par};

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write(path, &s)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

/// Dataset after validation, cleaning and splitting, with encoded matrices.
pub struct Prepared {
    pub raw: Dataset,
    pub validation: ValidationReport,
    pub cleaned: Dataset,
    pub cleaning: CleaningReport,
    pub split: SplitPair,
    pub x_train: Matrix,
    pub y_train: Vec<u8>,
    pub x_test: Matrix,
    pub y_test: Vec<u8>,
    pub stamp: SchemaStamp,
}

pub fn load_dataset(cfg: &PipelineConfig) -> Result<Dataset> {
    parse_csv_path(cfg.dataset_path()?)
}

fn require_valid(v: &ValidationReport) -> Result<()> {
    if let Some(first) = v.violations.first() {
        return Err(Error::BadCell {
            line: first.line,
            column: first.column.clone(),
            value: first.value.to_string(),
            expected: "an allowed code",
        });
    }
    Ok(())
}

pub fn prepare_dataset(cfg: &PipelineConfig, raw: Dataset) -> Result<Prepared> {
    let validation = validate_schema(&raw);
    require_valid(&validation)?;
    let (cleaned, cleaning) = clean(&raw, &cfg.cleaning)?;
    let split = stratified_split(&cleaned, cfg.split_fraction, cfg.seed)?;
    let schema = raw.schema();
    let x_train = schema.encode(split.train.features(), cfg.encoding);
    let x_test = schema.encode(split.test.features(), cfg.encoding);
    Ok(Prepared {
        validation,
        cleaning,
        y_train: split.train.targets().to_vec(),
        y_test: split.test.targets().to_vec(),
        x_train,
        x_test,
        stamp: SchemaStamp::new(schema, cfg.encoding),
        split,
        cleaned,
        raw,
    })
}

pub fn prepare(cfg: &PipelineConfig) -> Result<Prepared> {
    prepare_dataset(cfg, load_dataset(cfg)?)
}

/// File-name stem per candidate: the algorithm name, suffixed with the
/// candidate index when an algorithm appears more than once.
pub fn candidate_names(cfg: &PipelineConfig) -> Vec<String> {
    cfg.candidates
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let dup = cfg.candidates.iter().filter(|o| o.algorithm == c.algorithm).count() > 1;
            if dup {
                format!("{}_{i}", c.algorithm)
            } else {
                c.algorithm.to_string()
            }
        })
        .collect()
}

// ---------------------------------------------------------------- analyze

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisOutcome {
    pub rows: usize,
    pub valid: bool,
    pub rows_after_cleaning: Option<usize>,
    pub files: Vec<PathBuf>,
}

/// Validation, cleaning, summary and correlation reports. Summary and
/// correlations describe the raw table, before any row is removed.
pub fn cmd_analyze(cfg: &PipelineConfig) -> Result<AnalysisOutcome> {
    let raw = load_dataset(cfg)?;
    analyze_dataset(cfg, &raw)
}

pub fn analyze_dataset(cfg: &PipelineConfig, raw: &Dataset) -> Result<AnalysisOutcome> {
    let dir = cfg.out.join("analysis");
    let mut files = Vec::new();
    let mut put = |name: &str, text: String| -> Result<()> {
        let p = dir.join(name);
        write(&p, &text)?;
        files.push(p);
        Ok(())
    };

    let validation = validate_schema(raw);
    put("validation.json", json(&validation)?)?;

    let mut rows_after_cleaning = None;
    if validation.valid {
        let (cleaned, report) = clean(raw, &cfg.cleaning)?;
        rows_after_cleaning = Some(cleaned.len());
        #[derive(Serialize)]
        struct Cleaning<'a> {
            report: &'a CleaningReport,
            iqr_sweep: Vec<crate::data::IqrSweepPoint>,
        }
        put(
            "cleaning.json",
            json(&Cleaning {
                report: &report,
                iqr_sweep: iqr_sweep(raw, &IQR_GRID),
            })?,
        )?;
    }

    let summary = summarize(raw, DEFAULT_BINS);
    put("summary.json", json(&summary)?)?;

    let corr = correlation_with_target(raw);
    #[derive(Serialize)]
    struct Corr<'a> {
        entries: &'a [crate::data::CorrelationEntry],
        ranked: Vec<crate::data::CorrelationEntry>,
    }
    put(
        "correlation.json",
        json(&Corr {
            entries: &corr.entries,
            ranked: corr.ranked(),
        })?,
    )?;

    let m = correlation_matrix(raw);
    let mut s = format!("column,{}\n", m.columns.join(","));
    for (name, row) in m.columns.iter().zip(&m.values) {
        let cells: Vec<String> = row.iter().map(|v| opt(*v)).collect();
        let _ = writeln!(s, "{name},{}", cells.join(","));
    }
    put("correlation_matrix.csv", s)?;

    let mut s = String::from("attribute,bin,lower,upper,target_0,target_1\n");
    for h in &summary.histograms {
        for b in 0..h.target_0.len() {
            let _ = writeln!(
                s,
                "{},{b},{},{},{},{}",
                h.attribute,
                h.edges[b],
                h.edges[b + 1],
                h.target_0[b],
                h.target_1[b]
            );
        }
    }
    put("histograms.csv", s)?;

    let mut s = String::from("attribute,code,target_0,target_1\n");
    for n in &summary.nominal_counts {
        for c in &n.counts {
            let _ = writeln!(s, "{},{},{},{}", n.attribute, c.code, c.target_0, c.target_1);
        }
    }
    put("nominal_counts.csv", s)?;

    let mut s = String::from("age_decade,st_slope,target_0,target_1\n");
    for r in &summary.st_slope_by_age {
        let _ = writeln!(s, "{},{},{},{}", r.age_decade, r.st_slope, r.target_0, r.target_1);
    }
    put("st_slope_by_age.csv", s)?;

    Ok(AnalysisOutcome {
        rows: raw.len(),
        valid: validation.valid,
        rows_after_cleaning,
        files,
    })
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

// --------------------------------------------------------------- baseline

#[derive(Clone, Debug, Serialize)]
pub struct BaselineRow {
    pub name: String,
    pub spec: LearnerSpec,
    pub cv_mean_accuracy: f64,
    pub cv_std_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
    pub test_accuracy: f64,
}

#[derive(Clone, Debug)]
pub struct BaselineOutcome {
    /// Sorted by descending test accuracy; ties keep declaration order.
    pub rows: Vec<BaselineRow>,
    pub grids: Vec<(String, GridSearchResult)>,
    pub models: Vec<(String, TrainedModel)>,
}

fn accuracy(y: &[u8], pred: &[u8]) -> f64 {
    y.iter().zip(pred).filter(|(a, b)| a == b).count() as f64 / y.len() as f64
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n;
    (m, var.sqrt())
}

/// Tunes each candidate over its grid (if any) by 10-fold CV on the
/// training split, refits the winner on the whole training split and
/// scores the test split.
pub fn cmd_baseline(cfg: &PipelineConfig) -> Result<BaselineOutcome> {
    let prep = prepare(cfg)?;
    baseline_prepared(cfg, &prep)
}

pub fn baseline_prepared(cfg: &PipelineConfig, prep: &Prepared) -> Result<BaselineOutcome> {
    let plan = k_fold_plan(prep.x_train.n_rows(), cfg.folds, cfg.seed, Some(&prep.y_train))?;
    let names = candidate_names(cfg);
    let results = par::try_map_range(cfg.candidates.len(), |i| -> Result<_> {
        let template = cfg.candidate_spec(i);
        let (spec, folds, grid) = if cfg.candidates[i].grid.is_empty() {
            let cv = cross_validate(&template, &prep.x_train, &prep.y_train, &plan)?;
            (template, cv.fold_accuracies, None)
        } else {
            let g = grid_search(&template, &cfg.candidates[i].grid_pairs(), &prep.x_train, &prep.y_train, &plan)?;
            (g.best_spec(&template), g.best_point().fold_accuracies.clone(), Some(g))
        };
        let model = fit(&spec, &prep.x_train, &prep.y_train)?;
        let test_accuracy = accuracy(&prep.y_test, &model.predict(&prep.x_test)?);
        let (m, s) = mean_std(&folds);
        let row = BaselineRow {
            name: names[i].clone(),
            spec,
            cv_mean_accuracy: m,
            cv_std_accuracy: s,
            fold_accuracies: folds,
            test_accuracy,
        };
        Ok((row, grid, model))
    })?;

    let mut rows = Vec::new();
    let mut grids = Vec::new();
    let mut models = Vec::new();
    for (row, grid, model) in results {
        if let Some(g) = grid {
            grids.push((row.name.clone(), g));
        }
        models.push((row.name.clone(), model));
        rows.push(row);
    }
    rows.sort_by(|a, b| b.test_accuracy.total_cmp(&a.test_accuracy));

    let dir = cfg.out.join("baseline");
    let mut s = String::from("rank,model,spec,cv_mean_accuracy,cv_std_accuracy,test_accuracy\n");
    for (k, r) in rows.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},\"{}\",{},{},{}",
            k + 1,
            r.name,
            r.spec.label(),
            percent(Some(r.cv_mean_accuracy)),
            percent(Some(r.cv_std_accuracy)),
            percent(Some(r.test_accuracy))
        );
    }
    write(&dir.join("baseline.csv"), &s)?;

    let mut s = String::from("model,fold,accuracy\n");
    for (name, _) in &models {
        let r = rows.iter().find(|r| &r.name == name).expect("row per model");
        for (f, a) in r.fold_accuracies.iter().enumerate() {
            let _ = writeln!(s, "{name},{f},{a}");
        }
    }
    write(&dir.join("comparison.csv"), &s)?;

    let grid_map: std::collections::BTreeMap<_, _> = grids.iter().map(|(n, g)| (n.clone(), g)).collect();
    write_json(&dir.join("grid_search.json"), &grid_map)?;

    for (name, m) in &models {
        let file = ModelFile::new(StoredModel::Single(Box::new(m.clone())), prep.stamp.clone());
        model_store::save(baseline_model_path(cfg, name), &file)?;
    }
    Ok(BaselineOutcome { rows, grids, models })
}

pub fn baseline_model_path(cfg: &PipelineConfig, name: &str) -> PathBuf {
    cfg.out
        .join("models")
        .join("baseline")
        .join(format!("{name}.{}", model_store::EXTENSION))
}

pub fn stack_model_path(cfg: &PipelineConfig) -> PathBuf {
    cfg.out.join("models").join(format!("stack.{}", model_store::EXTENSION))
}

// ------------------------------------------------------------------ train

/// Fits the stack on the training split and saves it with its selection
/// report.
pub fn cmd_train(cfg: &PipelineConfig) -> Result<StackFit> {
    let prep = prepare(cfg)?;
    train_prepared(cfg, &prep)
}

pub fn train_prepared(cfg: &PipelineConfig, prep: &Prepared) -> Result<StackFit> {
    let sf = fit_stack(&cfg.stacking_config(), &prep.x_train, &prep.y_train)?;
    let file = ModelFile::new(StoredModel::Stacked(Box::new(sf.model.clone())), prep.stamp.clone());
    model_store::save(stack_model_path(cfg), &file)?;

    #[derive(Serialize)]
    struct Candidate<'a> {
        name: &'a str,
        spec: &'a LearnerSpec,
        fold_accuracies: &'a [f64],
        mean_accuracy: f64,
        selected: bool,
    }
    #[derive(Serialize)]
    struct Selection<'a> {
        top_n: usize,
        folds: usize,
        selected: Vec<&'a str>,
        candidates: Vec<Candidate<'a>>,
        meta: &'a LearnerSpec,
    }
    let names = candidate_names(cfg);
    let sel = &sf.model.selection;
    let report = Selection {
        top_n: cfg.stacking.top_n,
        folds: cfg.folds,
        selected: sel.selected.iter().map(|&i| names[i].as_str()).collect(),
        candidates: sel
            .candidates
            .iter()
            .enumerate()
            .map(|(i, c)| Candidate {
                name: &names[i],
                spec: &c.spec,
                fold_accuracies: &sf.cv[i].fold_accuracies,
                mean_accuracy: c.mean_accuracy,
                selected: sel.selected.contains(&i),
            })
            .collect(),
        meta: &sf.model.meta.spec,
    };
    write_json(&cfg.out.join("models").join("selection.json"), &report)?;
    Ok(sf)
}

// --------------------------------------------------------------- evaluate

#[derive(Clone, Debug, Serialize)]
pub struct EvalRow {
    pub model: String,
    pub confusion: ConfusionMatrix,
    pub metrics: MetricReport,
    /// Trapezoidal area; absent when the test split has one class.
    pub roc_area: Option<f64>,
    pub average_precision: Option<f64>,
}

fn score(name: &str, y: &[u8], proba: &[f64], dir: &Path) -> Result<EvalRow> {
    let pred: Vec<u8> = proba.iter().map(|&p| u8::from(p >= 0.5)).collect();
    let cm = ConfusionMatrix::from_labels(y, &pred)?;
    let mut roc_area = None;
    let mut average_precision = None;
    if let Ok(c) = roc_curve(y, proba) {
        write(&dir.join(format!("roc_{name}.csv")), &c.to_csv())?;
        write(&dir.join(format!("roc_{name}.area")), &c.area_line())?;
        roc_area = Some(c.area);
    }
    if let Ok(c) = pr_curve(y, proba) {
        write(&dir.join(format!("pr_{name}.csv")), &c.to_csv())?;
        write(&dir.join(format!("pr_{name}.area")), &c.area_line())?;
        average_precision = Some(c.average_precision);
    }
    Ok(EvalRow {
        model: name.into(),
        confusion: cm,
        metrics: metric_report(&cm),
        roc_area,
        average_precision,
    })
}

fn load_stack(path: &Path, cfg: &PipelineConfig, prep: &Prepared) -> Result<StackedModel> {
    let file = model_store::load(path)?;
    file.schema.check(prep.raw.schema(), cfg.encoding)?;
    match file.model {
        StoredModel::Stacked(m) => Ok(*m),
        StoredModel::Single(_) => Err(Error::CorruptModel(format!(
            "{} holds a single model, expected a stack",
            path.display()
        ))),
    }
}

/// Scores the test split with the stack and with every base model: the
/// saved baseline models when present, otherwise the stack's own bases.
pub fn cmd_evaluate(cfg: &PipelineConfig, model: Option<&Path>) -> Result<Vec<EvalRow>> {
    let prep = prepare(cfg)?;
    evaluate_prepared(cfg, &prep, model)
}

pub fn evaluate_prepared(cfg: &PipelineConfig, prep: &Prepared, model: Option<&Path>) -> Result<Vec<EvalRow>> {
    let default_path = stack_model_path(cfg);
    let path = model.unwrap_or(&default_path);
    let stack = load_stack(path, cfg, prep)?;
    let dir = cfg.out.join("evaluation");
    let mut rows = vec![score("stacked", &prep.y_test, &stack.predict(&prep.x_test)?.proba, &dir)?];

    let mut bases: Vec<(String, TrainedModel)> = Vec::new();
    for name in candidate_names(cfg) {
        let p = baseline_model_path(cfg, &name);
        if p.exists() {
            let f = model_store::load(&p)?;
            f.schema.check(prep.raw.schema(), cfg.encoding)?;
            if let StoredModel::Single(m) = f.model {
                bases.push((name, *m));
            }
        }
    }
    if bases.is_empty() {
        let names = candidate_names(cfg);
        for (j, &c) in stack.selection.selected.iter().enumerate() {
            let name = names.get(c).cloned().unwrap_or_else(|| stack.bases[j].spec.algorithm.to_string());
            bases.push((name, stack.bases[j].clone()));
        }
    }
    for (name, m) in &bases {
        rows.push(score(name, &prep.y_test, &m.predict_proba(&prep.x_test)?, &dir)?);
    }

    let mut s = String::from(
        "model,accuracy,precision,sensitivity,specificity,f1,balanced_auc,mcc,roc_area,average_precision,tp,tn,fp,fn\n",
    );
    for r in &rows {
        let m: Vec<String> = r.metrics.values().iter().map(|v| percent(*v)).collect();
        let c = &r.confusion;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.model,
            m.join(","),
            opt(r.roc_area),
            opt(r.average_precision),
            c.tp,
            c.tn,
            c.fp,
            c.fn_
        );
    }
    write(&dir.join("metrics.csv"), &s)?;
    write_json(&dir.join("metrics.json"), &rows)?;
    write(&dir.join("literature.csv"), &literature::to_csv())?;
    Ok(rows)
}

// ---------------------------------------------------------------- predict

#[derive(Clone, Debug, Serialize)]
pub struct PredictOutcome {
    pub proba: Vec<f64>,
    pub labels: Vec<u8>,
    pub metrics: Option<MetricReport>,
}

/// Scores `input` with a saved single or stacked model and writes
/// `row,probability,label` (plus `target` when the input has one) to
/// `output`. With targets, a metric report goes next to it as
/// `<output>.metrics.json`.
pub fn cmd_predict(model: &Path, input: &Path, output: &Path) -> Result<PredictOutcome> {
    let file = model_store::load(model)?;
    let reader = fs::File::open(input).map_err(|e| Error::io(input, e))?;
    let table = parse_scoring_csv(std::io::BufReader::new(reader))?;
    file.schema.check(&table.schema, file.schema.encoding)?;
    let x = table.schema.encode(&table.features, file.schema.encoding);
    let proba = match &file.model {
        StoredModel::Single(m) => m.predict_proba(&x)?,
        StoredModel::Stacked(m) => m.predict(&x)?.proba,
    };
    let labels: Vec<u8> = proba.iter().map(|&p| u8::from(p >= 0.5)).collect();
    let mut s = String::from(if table.targets.is_some() {
        "row,probability,label,target\n"
    } else {
        "row,probability,label\n"
    });
    for (i, (p, l)) in proba.iter().zip(&labels).enumerate() {
        match &table.targets {
            Some(t) => writeln!(s, "{i},{p},{l},{}", t[i]),
            None => writeln!(s, "{i},{p},{l}"),
        }
        .expect("write to string");
    }
    write(output, &s)?;
    let metrics = match &table.targets {
        Some(t) => {
            let r = metric_report(&ConfusionMatrix::from_labels(t, &labels)?);
            let mut p = output.as_os_str().to_owned();
            p.push(".metrics.json");
            write_json(Path::new(&p), &r)?;
            Some(r)
        }
        None => None,
    };
    Ok(PredictOutcome { proba, labels, metrics })
}

// -------------------------------------------------------------------- run

/// analyze, baseline, train and evaluate in sequence.
pub fn cmd_run(cfg: &PipelineConfig) -> Result<Vec<EvalRow>> {
    let raw = load_dataset(cfg)?;
    analyze_dataset(cfg, &raw)?;
    let prep = prepare_dataset(cfg, raw)?;
    baseline_prepared(cfg, &prep)?;
    train_prepared(cfg, &prep)?;
    evaluate_prepared(cfg, &prep, None)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedRow {
    pub seed: u64,
    pub stacked_accuracy: f64,
    pub best_base: String,
    pub best_base_accuracy: f64,
    pub base_accuracies: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedSweep {
    pub rows: Vec<SeedRow>,
    pub stacked_mean: f64,
    pub stacked_std: f64,
    pub best_base_mean: f64,
    pub best_base_std: f64,
}

/// Repeats split, stack fit and test scoring for seeds `seed .. seed + n`.
/// Every candidate is also fit on each training split (with its configured
/// hyperparameters) to give the best single-model reference.
pub fn seed_sweep(cfg: &PipelineConfig, raw: &Dataset, n: usize) -> Result<SeedSweep> {
    if n == 0 {
        return Err(Error::InvalidArgument("seed sweep needs at least one seed".into()));
    }
    let names = candidate_names(cfg);
    let mut rows = Vec::with_capacity(n);
    for k in 0..n as u64 {
        let mut c = cfg.clone();
        c.seed = cfg.seed.wrapping_add(k);
        let prep = prepare_dataset(&c, raw.clone())?;
        let sf = fit_stack(&c.stacking_config(), &prep.x_train, &prep.y_train)?;
        let stacked_accuracy = accuracy(&prep.y_test, &sf.model.predict(&prep.x_test)?.labels);
        let sc = c.stacking_config();
        let base_accuracies = par::try_map_range(sc.candidates.len(), |i| -> Result<f64> {
            let reuse = sf.model.selection.selected.iter().position(|&s| s == i);
            let pred = match reuse {
                Some(j) => sf.model.bases[j].predict(&prep.x_test)?,
                None => fit(&sc.candidates[i], &prep.x_train, &prep.y_train)?.predict(&prep.x_test)?,
            };
            Ok(accuracy(&prep.y_test, &pred))
        })?;
        let mut best = 0;
        for i in 1..base_accuracies.len() {
            if base_accuracies[i] > base_accuracies[best] {
                best = i;
            }
        }
        rows.push(SeedRow {
            seed: c.seed,
            stacked_accuracy,
            best_base: names[best].clone(),
            best_base_accuracy: base_accuracies[best],
            base_accuracies,
        });
    }
    let (stacked_mean, stacked_std) = mean_std(&rows.iter().map(|r| r.stacked_accuracy).collect::<Vec<_>>());
    let (best_base_mean, best_base_std) = mean_std(&rows.iter().map(|r| r.best_base_accuracy).collect::<Vec<_>>());
    let sweep = SeedSweep {
        rows,
        stacked_mean,
        stacked_std,
        best_base_mean,
        best_base_std,
    };
    let dir = cfg.out.join("evaluation");
    let mut s = String::from("seed,stacked_accuracy,best_base,best_base_accuracy\n");
    for r in &sweep.rows {
        let _ = writeln!(s, "{},{},{},{}", r.seed, r.stacked_accuracy, r.best_base, r.best_base_accuracy);
    }
    let _ = writeln!(s, "mean,{},,{}", sweep.stacked_mean, sweep.best_base_mean);
    let _ = writeln!(s, "std,{},,{}", sweep.stacked_std, sweep.best_base_std);
    write(&dir.join("seeds.csv"), &s)?;
    write_json(&dir.join("seeds.json"), &sweep)?;
    Ok(sweep)
}
