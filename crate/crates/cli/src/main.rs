//! `possum`: audit a model's subgroup AUROC, compare candidates against a
//! baseline, and generate synthetic studies.
//!
//! Exit codes: 0 success (every candidate promoted), 1 at least one candidate
//! rejected by the gate, 2 invalid input.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use possum::metrics::CiMethod;
use possum::report::{self, ReportConfig};
use possum::synth::{build_study, ScenarioSpec, PRESETS};
use possum::{align, ingest, BootstrapConfig, GatePolicy, InclusionPolicy, PredictionSet};

const EXIT_REJECT: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "possum", version, about = "Baseline-relative subgroup fairness audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-finding AUROC, subgroup intervals and fairness score for one model.
    Audit {
        /// Prediction file of the model.
        #[arg(long, env = "POSSUM_INPUT")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compare candidates with a baseline; exit 1 if any candidate is rejected.
    Compare {
        #[arg(long, env = "POSSUM_BASELINE")]
        baseline: PathBuf,
        /// Candidate prediction file (repeatable).
        #[arg(long = "candidate", required = true)]
        candidates: Vec<PathBuf>,
        /// Tolerance below zero before a loss counts.
        #[arg(long, default_value_t = 0.0, env = "POSSUM_EPSILON")]
        epsilon: f64,
        /// Count a loss only when the bootstrap interval of the delta lies below -epsilon.
        #[arg(long, env = "POSSUM_CONSERVATIVE_CI")]
        conservative_ci: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write baseline and candidate prediction files for a synthetic scenario.
    Gen {
        /// Built-in scenario name.
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec", value_parser = clap::builder::PossibleValuesParser::new(PRESETS))]
        preset: Option<String>,
        /// Scenario file (TOML).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Overrides the scenario's seed.
        #[arg(long, env = "POSSUM_SEED")]
        seed: Option<u64>,
        /// Output directory; created if missing.
        #[arg(long = "out-dir", env = "POSSUM_OUT_DIR")]
        out_dir: PathBuf,
        /// Tab-separated output.
        #[arg(long)]
        tab: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long = "min-pos", default_value_t = 5, env = "POSSUM_MIN_POS")]
    min_pos: usize,
    #[arg(long = "min-neg", default_value_t = 5, env = "POSSUM_MIN_NEG")]
    min_neg: usize,
    #[arg(long = "bootstrap-n", default_value_t = 300, env = "POSSUM_BOOTSTRAP_N")]
    bootstrap_n: usize,
    #[arg(long, default_value_t = 0.95, env = "POSSUM_CONFIDENCE")]
    confidence: f64,
    #[arg(long, default_value_t = 0, env = "POSSUM_SEED")]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json, env = "POSSUM_FORMAT")]
    format: Format,
    /// Report path; stdout when absent.
    #[arg(long, env = "POSSUM_OUT")]
    out: Option<PathBuf>,
    /// Input files are tab-separated.
    #[arg(long, env = "POSSUM_TAB")]
    tab: bool,
}

impl Common {
    fn delimiter(&self) -> u8 {
        if self.tab {
            b'\t'
        } else {
            b','
        }
    }

    fn config(&self, gate: GatePolicy) -> Result<ReportConfig, String> {
        let bootstrap = BootstrapConfig {
            n_resamples: self.bootstrap_n,
            confidence_level: self.confidence,
            seed: self.seed,
            method: CiMethod::Percentile,
        };
        bootstrap.validate().map_err(|e| e.to_string())?;
        Ok(ReportConfig {
            inclusion: InclusionPolicy::new(self.min_pos, self.min_neg),
            bootstrap,
            gate,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn model_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load(path: &Path, id: String, delimiter: u8) -> Result<PredictionSet, String> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ingest(BufReader::new(file), id, delimiter).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Audit { input, common } => {
            let config = common.config(GatePolicy::default())?;
            let set = load(&input, model_id(&input), common.delimiter())?;
            let rep = report::audit(&set, &config).map_err(|e| e.to_string())?;
            warn_all(&rep.warnings);
            let text = match common.format {
                Format::Json => to_json(&rep)?,
                Format::Csv => report::audit_csv(&rep).map_err(|e| e.to_string())?,
            };
            emit(common.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Compare {
            baseline,
            candidates,
            epsilon,
            conservative_ci,
            common,
        } => {
            if epsilon.is_nan() || epsilon < 0.0 {
                return Err(format!("--epsilon must be >= 0, got {epsilon}"));
            }
            let gate = GatePolicy {
                epsilon,
                conservative_ci,
                ..GatePolicy::default()
            };
            let config = common.config(gate)?;
            let base = load(&baseline, model_id(&baseline), common.delimiter())?;
            let mut seen = std::collections::HashMap::<String, usize>::new();
            let mut sets = Vec::with_capacity(candidates.len());
            for path in &candidates {
                let stem = model_id(path);
                let n = seen.entry(stem.clone()).or_insert(0);
                *n += 1;
                let id = if *n == 1 { stem } else { format!("{stem}#{n}") };
                sets.push(load(path, id, common.delimiter())?);
            }
            let study = align(base, sets).map_err(|e| e.to_string())?;
            let rep = report::compare_study(&study, &config).map_err(|e| e.to_string())?;
            warn_all(&rep.warnings);
            let text = match common.format {
                Format::Json => to_json(&rep)?,
                Format::Csv => report::compare_csv(&rep).map_err(|e| e.to_string())?,
            };
            emit(common.out.as_deref(), &text)?;
            Ok(if rep.all_promoted { 0 } else { EXIT_REJECT })
        }
        Command::Gen {
            preset,
            spec,
            seed,
            out_dir,
            tab,
        } => {
            let mut scenario = match (preset, spec) {
                (Some(name), _) => ScenarioSpec::preset(&name, 0).ok_or_else(|| format!("unknown preset `{name}`"))?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    ScenarioSpec::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))?
                }
                (None, None) => return Err("one of --preset or --spec is required".into()),
            };
            if let Some(s) = seed {
                scenario.seed = s;
            }
            let study = build_study(&scenario).map_err(|e| e.to_string())?;
            std::fs::create_dir_all(&out_dir).map_err(|e| format!("{}: {e}", out_dir.display()))?;
            let (delimiter, ext) = if tab { (b'\t', "tsv") } else { (b',', "csv") };
            for set in std::iter::once(study.baseline()).chain(study.candidates()) {
                let path = out_dir.join(format!("{}.{ext}", set.model_id()));
                let file = File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                set.write_delimited(io::BufWriter::new(file), delimiter)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
            let spec_path = out_dir.join("scenario.toml");
            std::fs::write(&spec_path, scenario.to_toml()).map_err(|e| format!("{}: {e}", spec_path.display()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
