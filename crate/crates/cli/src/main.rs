use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use gesture_mapping::catalog::catalog_to_json;
use gesture_mapping::criteria::{Criterion, Evaluator};
use gesture_mapping::fixtures;
use gesture_mapping::mapping::{mapping_from_entries, parse_mapping_entries};
use gesture_mapping::optimizer::optimize;
use gesture_mapping::vocabulary::spec_to_json;
use gesture_mapping::{verify_mapping, WeightVector};

mod config;
mod render;

use config::{builtin_document, spec_file, Format, RunConfig};

#[derive(Parser)]
#[command(name = "gesture-map", version, about = "Enumerate gesture vocabularies and score or optimize task-to-gesture mappings")]
struct Cli {
    /// Run configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Solver seed; overrides the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the gestures a spec admits.
    Enumerate {
        /// Spec file; defaults to the config's spec.
        #[arg(long, conflicts_with = "builtin")]
        spec: Option<PathBuf>,
        /// Built-in spec: touch, pen, tangible or all.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Score a mapping file.
    Score {
        #[arg(long)]
        mapping: PathBuf,
    },
    /// Search for the best mapping.
    Optimize,
    /// Write the demo catalog, spec, mapping, weights and config to a directory.
    Fixtures { dir: PathBuf },
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.solver.seed = seed;
    }
    if let Some(format) = cli.format {
        config.format = Some(format);
    }
    Ok(config)
}

fn require_config(cli: &Cli) -> Result<RunConfig> {
    if cli.config.is_none() {
        bail!("this command needs --config");
    }
    load_config(cli)
}

fn enumerate(config: &RunConfig, spec: &Option<PathBuf>, builtin: &Option<String>, count_only: bool) -> Result<String> {
    let doc = match (spec, builtin) {
        (Some(path), _) => spec_file(path)?,
        (None, Some(name)) => builtin_document(name)?,
        (None, None) => config.spec().context("no spec given (use --spec, --builtin or a config with `spec`)")?,
    };
    let vocabulary = doc.vocabulary()?;
    Ok(render::enumeration(&vocabulary, count_only, config.format.unwrap_or_default()))
}

fn score(config: &RunConfig, mapping: &Path) -> Result<String> {
    let ctx = config.context()?;
    let active = config.criteria()?;
    let weights = config.weights(&active)?;
    let text = fs::read_to_string(mapping).with_context(|| format!("cannot read {}", mapping.display()))?;
    let entries = parse_mapping_entries(&text).with_context(|| format!("invalid mapping {}", mapping.display()))?;
    let m = mapping_from_entries(&entries, ctx.vocabulary())?;
    let violations = verify_mapping(&m, ctx.catalog(), ctx.vocabulary());
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  - {v}")).collect();
        bail!("invalid mapping {}:\n{}", mapping.display(), lines.join("\n"));
    }
    let assignment = m.assignment(ctx.catalog(), ctx.vocabulary()).expect("verified");
    let eval = Evaluator::new(&ctx, &active, &weights, config.normalization)?;
    let report = eval.report(&assignment);
    Ok(render::score(&ctx, &assignment, &report, config.format.unwrap_or_default()))
}

fn run_optimize(config: &RunConfig) -> Result<String> {
    let ctx = config.context()?;
    let active = config.criteria()?;
    let weights = config.weights(&active)?;
    let eval = Evaluator::new(&ctx, &active, &weights, config.normalization)?;
    let result = optimize(&eval, &config.solver)?;
    Ok(render::optimization(&ctx, &config.solver, &result, config.format.unwrap_or_default()))
}

fn write_fixtures(dir: &Path) -> Result<String> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let demo = fixtures::demo();
    let entries = fixtures::demo_mapping_entries();
    let weights = WeightVector::uniform(&Criterion::all_builtin(), 1.0)?;
    let config = serde_json::json!({
        "catalog": "catalog.json",
        "spec": "spec.json",
        "weights": "weights.json",
        "solver": { "algorithm": "brute-force" },
    });
    let files = [
        ("catalog.json", catalog_to_json(&demo.catalog)),
        ("spec.json", spec_to_json(&demo.spec)),
        ("mapping.json", serde_json::to_string_pretty(&entries)?),
        ("weights.json", serde_json::to_string_pretty(&weights)?),
        ("config.json", serde_json::to_string_pretty(&config)?),
    ];
    let mut out = String::new();
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body + "\n").with_context(|| format!("cannot write {}", path.display()))?;
        out.push_str(&format!("wrote {}\n", path.display()));
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Enumerate { spec, builtin, count_only } => enumerate(&load_config(cli)?, spec, builtin, *count_only),
        Command::Score { mapping } => score(&require_config(cli)?, mapping),
        Command::Optimize => run_optimize(&require_config(cli)?),
        Command::Fixtures { dir } => write_fixtures(dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
