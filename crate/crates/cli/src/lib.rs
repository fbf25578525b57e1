//! Command-line driver: ingestion, framing, featurization, training,
//! evaluation and synthesis, wired into reproducible experiments.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 runtime failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;

use config::{
    load_params, ExperimentParams, FeaturizeParams, StatsParams, SynthParams, TrainParams,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

#[derive(Parser)]
#[command(
    name = "ratelink",
    version,
    about = "Temporal link prediction with per-node link-formation-rate forecasts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-snapshot edge churn as CSV (t,added,dropped)
    Stats(StatsArgs),
    /// Generate a synthetic temporal network in edge-list format
    Synth(SynthArgs),
    /// Emit a labeled pair dataset (or raw metric scores) as CSV
    Featurize(FeaturizeArgs),
    /// Train the linear classifier on a featurized CSV
    Train(TrainArgs),
    /// Run the method comparison for a chosen method subset
    Evaluate(ExperimentArgs),
    /// Run the full seven-method comparison
    Compare(ExperimentArgs),
}

#[derive(Args)]
struct StatsArgs {
    /// JSON file with resolved parameters (flags override)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge-list file (src dst snapshot)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Treat edges as directed
    #[arg(long)]
    directed: bool,
    /// Write CSV here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long)]
    snapshots: Option<usize>,
    /// Expected new links per node per snapshot
    #[arg(long)]
    base_rate: Option<f64>,
    /// Fraction of high-rate nodes
    #[arg(long)]
    hot_fraction: Option<f64>,
    /// Rate ratio of hot vs normal nodes
    #[arg(long)]
    hot_multiplier: Option<f64>,
    /// Per-snapshot edge-drop probability
    #[arg(long)]
    churn: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Edge-list output path
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FeaturizeArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    directed: bool,
    /// Neighborhood of directed graphs: "in-out" or "out"
    #[arg(long)]
    neighbor_mode: Option<String>,
    /// Snapshots per frame
    #[arg(long)]
    window: Option<usize>,
    /// Number of frames (0 = as many as fit)
    #[arg(long)]
    frames: Option<usize>,
    /// 1-based target frame (0 = last)
    #[arg(long)]
    target_frame: Option<usize>,
    /// Feature set: rpm, supervised or supervised-ma
    #[arg(long)]
    kind: Option<String>,
    /// Forecast model spec, e.g. wma:0.2,0.3,0.5 | ma:3 | ema:0.5 | mean
    #[arg(long)]
    model: Option<String>,
    /// Compute static features on the union of all history frames
    #[arg(long)]
    cumulative_graph: bool,
    /// Count dropped incident edges in the rate series
    #[arg(long)]
    count_deletions: bool,
    /// Dump raw metric scores instead of a labeled dataset
    #[arg(long)]
    raw: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Featurized CSV (src,dst,label,features...)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Sidecar schema JSON to validate the feature columns
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Regularization trade-off C
    #[arg(long)]
    cost: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// "balanced" or "none"
    #[arg(long)]
    class_weighting: Option<String>,
    /// Degree-2 feature-map expansion
    #[arg(long)]
    poly2: bool,
    /// Model JSON output path
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    neighbor_mode: Option<String>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    frames: Option<usize>,
    #[arg(long)]
    target_frame: Option<usize>,
    /// Comma-separated method list (evaluate only)
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    cost: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    class_weighting: Option<String>,
    #[arg(long)]
    poly2: bool,
    #[arg(long)]
    folds: Option<usize>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cumulative_graph: bool,
    #[arg(long)]
    count_deletions: bool,
    /// Disable the sliding-target axis
    #[arg(long)]
    no_snapshot_axis: bool,
    /// Cap worker threads for pair scoring and CV
    #[arg(long)]
    threads: Option<usize>,
    /// Report JSON output path
    #[arg(long)]
    output: Option<PathBuf>,
    /// Per-run AUROC CSV output path
    #[arg(long)]
    csv: Option<PathBuf>,
}

macro_rules! overlay {
    ($params:ident, $args:ident; $($field:ident),+ $(,)?) => {
        $(if let Some(v) = $args.$field.clone() { $params.$field = v.into(); })+
    };
}

macro_rules! overlay_opt {
    ($params:ident, $args:ident; $($field:ident),+ $(,)?) => {
        $(if $args.$field.is_some() { $params.$field = $args.$field.clone(); })+
    };
}

fn resolve_stats(args: &StatsArgs) -> Result<StatsParams, CliError> {
    let mut p: StatsParams = load_params(args.config.as_deref()).map_err(CliError::Runtime)?;
    overlay_opt!(p, args; input, output);
    if args.directed {
        p.directed = true;
    }
    p.command = "stats".into();
    Ok(p)
}

fn resolve_synth(args: &SynthArgs) -> Result<SynthParams, CliError> {
    let mut p: SynthParams = load_params(args.config.as_deref()).map_err(CliError::Runtime)?;
    overlay!(p, args; nodes, snapshots, base_rate, hot_fraction, hot_multiplier, churn, seed);
    overlay_opt!(p, args; output);
    p.command = "synth".into();
    Ok(p)
}

fn resolve_featurize(args: &FeaturizeArgs) -> Result<FeaturizeParams, CliError> {
    let mut p: FeaturizeParams = load_params(args.config.as_deref()).map_err(CliError::Runtime)?;
    overlay!(p, args; neighbor_mode, window, frames, target_frame, kind, model);
    overlay_opt!(p, args; input, output);
    if args.directed {
        p.directed = true;
    }
    if args.cumulative_graph {
        p.cumulative_graph = true;
    }
    if args.count_deletions {
        p.count_deletions = true;
    }
    if args.raw {
        p.raw = true;
    }
    p.command = "featurize".into();
    Ok(p)
}

fn resolve_train(args: &TrainArgs) -> Result<TrainParams, CliError> {
    let mut p: TrainParams = load_params(args.config.as_deref()).map_err(CliError::Runtime)?;
    overlay!(p, args; cost, epochs, learning_rate, seed, class_weighting);
    overlay_opt!(p, args; input, schema, output);
    if args.poly2 {
        p.poly2 = true;
    }
    p.command = "train".into();
    Ok(p)
}

fn resolve_experiment(args: &ExperimentArgs, command: &str) -> Result<ExperimentParams, CliError> {
    let mut p: ExperimentParams = load_params(args.config.as_deref()).map_err(CliError::Runtime)?;
    overlay!(p, args; neighbor_mode, window, frames, target_frame, model, cost, epochs,
             learning_rate, class_weighting, folds, repeats, seed);
    overlay_opt!(p, args; input, output, csv, threads);
    if let Some(methods) = &args.methods {
        p.methods = methods.clone();
    }
    if args.directed {
        p.directed = true;
    }
    if args.poly2 {
        p.poly2 = true;
    }
    if args.cumulative_graph {
        p.cumulative_graph = true;
    }
    if args.count_deletions {
        p.count_deletions = true;
    }
    if args.no_snapshot_axis {
        p.snapshot_axis = false;
    }
    p.command = command.into();
    Ok(p)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Stats(args) => commands::stats(&resolve_stats(&args)?),
        Command::Synth(args) => commands::synth(&resolve_synth(&args)?),
        Command::Featurize(args) => commands::featurize(&resolve_featurize(&args)?),
        Command::Train(args) => commands::train_cmd(&resolve_train(&args)?),
        Command::Evaluate(args) => {
            commands::experiment(&resolve_experiment(&args, "evaluate")?, false)
        }
        Command::Compare(args) => {
            commands::experiment(&resolve_experiment(&args, "compare")?, true)
        }
    }
}

/// Parse arguments, run the requested subcommand, and return the process
/// exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .try_init();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
