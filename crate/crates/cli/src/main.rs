//! `heartstack`: analyze, baseline, train, evaluate and predict from one config.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use heartstack::config::{PipelineConfig, BUILTIN_DEFAULTS};
use heartstack::metrics::percent;
use heartstack::{pipeline, Error};

#[derive(Parser)]
#[command(name = "heartstack", version, about = "Stacked-ensemble heart disease classification pipeline")]
struct Cli {
    /// TOML config file, or `defaults` for the built-in settings.
    #[arg(long, global = true, default_value = BUILTIN_DEFAULTS)]
    config: String,
    /// Master seed; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory; overrides the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Dataset CSV; overrides the config and $HEART_CSV.
    #[arg(long, global = true)]
    dataset: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validation, cleaning, summary and correlation reports.
    Analyze,
    /// Tune, cross-validate and test every candidate learner.
    Baseline,
    /// Fit the stacked ensemble and save it.
    Train,
    /// Score the test split with the saved stack and base models.
    Evaluate {
        /// Stack model file (default: <out>/models/stack.model).
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Score a CSV with a saved model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Predictions CSV (default: <out>/predictions.csv).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// analyze, baseline, train and evaluate in sequence.
    Run {
        /// Also repeat split and stack fit over this many seeds.
        #[arg(long)]
        seeds: Option<usize>,
    },
    /// Print the effective configuration as TOML.
    Config,
}

fn exit_code(e: &Error) -> u8 {
    match e.category() {
        "data" => 2,
        "schema" => 3,
        "model" => 4,
        "config" => 5,
        "io" => 6,
        _ => 7,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> heartstack::Result<()> {
    let mut cfg = PipelineConfig::load(&cli.config)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = cli.out {
        cfg.out = o;
    }
    if let Some(d) = cli.dataset {
        cfg.dataset = Some(d);
    }
    cfg.validate()?;
    match cli.command {
        Command::Analyze => {
            let a = pipeline::cmd_analyze(&cfg)?;
            println!("rows: {}  valid: {}", a.rows, a.valid);
            if let Some(n) = a.rows_after_cleaning {
                println!("rows after cleaning: {n}");
            }
            println!("wrote {} files under {}", a.files.len(), cfg.out.join("analysis").display());
        }
        Command::Baseline => {
            let b = pipeline::cmd_baseline(&cfg)?;
            println!("{:<16} {:>8} {:>8}", "model", "cv %", "test %");
            for r in &b.rows {
                println!(
                    "{:<16} {:>8} {:>8}",
                    r.name,
                    percent(Some(r.cv_mean_accuracy)),
                    percent(Some(r.test_accuracy))
                );
            }
        }
        Command::Train => {
            let sf = pipeline::cmd_train(&cfg)?;
            let names = pipeline::candidate_names(&cfg);
            let sel: Vec<&str> = sf.model.selection.selected.iter().map(|&i| names[i].as_str()).collect();
            println!("selected: {}", sel.join(", "));
            println!("saved {}", pipeline::stack_model_path(&cfg).display());
        }
        Command::Evaluate { model } => {
            let rows = pipeline::cmd_evaluate(&cfg, model.as_deref())?;
            print_eval(&rows);
        }
        Command::Predict { model, input, output } => {
            let output = output.unwrap_or_else(|| cfg.out.join("predictions.csv"));
            let p = pipeline::cmd_predict(&model, &input, &output)?;
            println!("scored {} rows -> {}", p.proba.len(), output.display());
            if let Some(m) = p.metrics {
                println!("accuracy {}", percent(m.accuracy));
            }
        }
        Command::Run { seeds } => {
            let rows = pipeline::cmd_run(&cfg)?;
            print_eval(&rows);
            if let Some(n) = seeds {
                let raw = pipeline::load_dataset(&cfg)?;
                let s = pipeline::seed_sweep(&cfg, &raw, n)?;
                println!(
                    "stacked over {n} seeds: {} ± {}  best single: {} ± {}",
                    percent(Some(s.stacked_mean)),
                    percent(Some(s.stacked_std)),
                    percent(Some(s.best_base_mean)),
                    percent(Some(s.best_base_std))
                );
            }
        }
        Command::Config => print!("{}", cfg.to_toml()?),
    }
    Ok(())
}

fn print_eval(rows: &[pipeline::EvalRow]) {
    println!(
        "{:<16} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "model", "acc", "prec", "sens", "spec", "f1", "bal_auc", "mcc"
    );
    for r in rows {
        let v: Vec<String> = r.metrics.values().iter().map(|v| percent(*v)).collect();
        println!(
            "{:<16} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
            r.model, v[0], v[1], v[2], v[3], v[4], v[5], v[6]
        );
    }
}
