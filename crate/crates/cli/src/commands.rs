//! Command bodies. Each takes fully-resolved parameters, does the work, and
//! echoes the parameters next to whatever it wrote.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use ratelink::classifier::{train, ClassWeighting, TrainConfig};
use ratelink::evaluation::{run_experiment, ExperimentConfig, Method};
use ratelink::forecasting::ForecastModel;
use ratelink::rate_features::{build_dataset, Dataset, DatasetOptions, FeatureSetKind, RateConfig};
use ratelink::synthgen::{generate, SynthConfig};
use ratelink::temporal_graph::{
    build_frames, load_edge_list, snapshot_dynamics, Directedness, NeighborMode, TemporalNetwork,
};
use ratelink::topo_metrics::all_metrics;

use crate::config::{
    write_echo, ExperimentParams, FeaturizeParams, StatsParams, SynthParams, TrainParams,
};
use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require_input(input: &Option<PathBuf>) -> Result<&Path, CliError> {
    input
        .as_deref()
        .ok_or_else(|| usage("missing --input (or an \"input\" field in the config file)"))
}

fn require_output(output: &Option<PathBuf>) -> Result<&Path, CliError> {
    output
        .as_deref()
        .ok_or_else(|| usage("missing --output (or an \"output\" field in the config file)"))
}

fn directedness(directed: bool) -> Directedness {
    if directed {
        Directedness::Directed
    } else {
        Directedness::Undirected
    }
}

fn parse_neighbor_mode(s: &str) -> Result<NeighborMode, CliError> {
    match s {
        "in-out" | "inout" => Ok(NeighborMode::InOut),
        "out" | "out-only" => Ok(NeighborMode::OutOnly),
        other => Err(usage(format!(
            "neighbor_mode must be \"in-out\" or \"out\", got {other:?}"
        ))),
    }
}

fn parse_class_weighting(s: &str) -> Result<ClassWeighting, CliError> {
    match s {
        "balanced" => Ok(ClassWeighting::Balanced),
        "none" => Ok(ClassWeighting::None),
        other => Err(usage(format!(
            "class_weighting must be \"balanced\" or \"none\", got {other:?}"
        ))),
    }
}

fn load_network(path: &Path, directed: bool, mode: NeighborMode) -> Result<TemporalNetwork> {
    let net = load_edge_list(path, directedness(directed))
        .with_context(|| format!("loading edge list {}", path.display()))?;
    Ok(net.with_neighbor_mode(mode))
}

pub fn stats(params: &StatsParams) -> Result<(), CliError> {
    let input = require_input(&params.input)?;
    let net = load_network(input, params.directed, NeighborMode::InOut)?;
    let dynamics = snapshot_dynamics(&net).map_err(anyhow::Error::from)?;
    let mut out = String::from("t,added,dropped\n");
    for d in &dynamics {
        out.push_str(&format!("{},{},{}\n", d.index, d.added, d.dropped));
    }
    match &params.output {
        None => print!("{out}"),
        Some(path) => {
            fs::write(path, out).with_context(|| format!("cannot write {}", path.display()))?;
            write_echo(path, params)?;
        }
    }
    Ok(())
}

pub fn synth(params: &SynthParams) -> Result<(), CliError> {
    let output = require_output(&params.output)?;
    let cfg = SynthConfig {
        num_nodes: params.nodes,
        num_snapshots: params.snapshots,
        base_rate: params.base_rate,
        hot_fraction: params.hot_fraction,
        hot_multiplier: params.hot_multiplier,
        churn: params.churn,
        seed: params.seed,
    };
    let net = generate(&cfg).map_err(|e| usage(e.to_string()))?;
    let mut buf = Vec::new();
    net.write_edge_list(&mut buf).map_err(anyhow::Error::from)?;
    fs::write(output, buf).with_context(|| format!("cannot write {}", output.display()))?;
    write_echo(output, params)?;
    Ok(())
}

/// Sidecar JSON describing a featurized dataset.
#[derive(Debug, Serialize, Deserialize)]
pub struct DatasetSidecar {
    pub kind: String,
    pub feature_names: Vec<String>,
    pub num_nodes: usize,
    pub positives: usize,
    pub negatives: usize,
    pub directed: bool,
}

struct ResolvedSplit {
    net: TemporalNetwork,
    frames: ratelink::temporal_graph::FramedSeries,
    target: usize,
}

fn resolve_split(
    input: &Path,
    directed: bool,
    neighbor_mode: &str,
    window: usize,
    frames: usize,
    target_frame: usize,
) -> Result<ResolvedSplit, CliError> {
    let mode = parse_neighbor_mode(neighbor_mode)?;
    let net = load_network(input, directed, mode)?;
    let count = if frames == 0 {
        if window == 0 {
            return Err(usage("window must be >= 1"));
        }
        net.num_snapshots() / window
    } else {
        frames
    };
    let framed = build_frames(&net, window, count).map_err(|e| usage(e.to_string()))?;
    let target = if target_frame == 0 { count } else { target_frame };
    if target < 2 || target > count {
        return Err(usage(format!(
            "target_frame must lie in 2..={count}, got {target}"
        )));
    }
    Ok(ResolvedSplit {
        net,
        frames: framed,
        target,
    })
}

pub fn featurize(params: &FeaturizeParams) -> Result<(), CliError> {
    let input = require_input(&params.input)?;
    let output = require_output(&params.output)?;
    let split = resolve_split(
        input,
        params.directed,
        &params.neighbor_mode,
        params.window,
        params.frames,
        params.target_frame,
    )?;
    let (history, target) = split
        .frames
        .history_and_target(split.target)
        .map_err(|e| usage(e.to_string()))?;

    if params.raw {
        // raw per-pair metric scores on the most recent history graph
        let g = history.last().expect("nonempty history").graph();
        let n = g.num_nodes() as u32;
        let mut out = String::from("src,dst,cn,jc,pa,aa\n");
        for x in 0..n {
            for y in 0..n {
                let m = all_metrics(g, x, y);
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    split.net.node_label(x),
                    split.net.node_label(y),
                    m[0],
                    m[1],
                    m[2],
                    m[3]
                ));
            }
        }
        fs::write(output, out).with_context(|| format!("cannot write {}", output.display()))?;
        write_echo(output, params)?;
        return Ok(());
    }

    let kind: FeatureSetKind = params.kind.parse().map_err(usage)?;
    let model: ForecastModel = params.model.parse().map_err(|e| usage(format!("{e}")))?;
    let opts = DatasetOptions {
        cumulative_graph: params.cumulative_graph,
        rate: RateConfig {
            count_deletions: params.count_deletions,
        },
    };
    let data = build_dataset(history, target, kind, &model, &opts).map_err(anyhow::Error::from)?;

    let mut buf = Vec::new();
    data.write_csv(&mut buf, Some(split.net.node_labels()))
        .map_err(anyhow::Error::from)?;
    fs::write(output, buf).with_context(|| format!("cannot write {}", output.display()))?;

    let (positives, negatives) = data.class_counts();
    let sidecar = DatasetSidecar {
        kind: kind.to_string(),
        feature_names: data.schema().to_vec(),
        num_nodes: split.net.num_nodes(),
        positives,
        negatives,
        directed: params.directed,
    };
    let sidecar_path = output.with_extension("schema.json");
    let mut text = serde_json::to_string_pretty(&sidecar)?;
    text.push('\n');
    fs::write(&sidecar_path, text)
        .with_context(|| format!("cannot write {}", sidecar_path.display()))?;
    write_echo(output, params)?;
    Ok(())
}

/// Parse a featurized CSV (`src,dst,label,<features>`) back into a dataset.
pub fn read_dataset_csv(path: &Path) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols.len() < 4 || cols[0] != "src" || cols[1] != "dst" || cols[2] != "label" {
        bail!("expected header src,dst,label,<features>; got {cols:?}");
    }
    let schema: Vec<String> = cols[3..].iter().map(|s| s.to_string()).collect();
    let nf = schema.len();

    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut intern = |label: &str| -> u32 {
        let next = ids.len() as u32;
        *ids.entry(label.to_string()).or_insert(next)
    };
    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 3 + nf {
            bail!("row {} has {} fields, expected {}", i + 1, record.len(), 3 + nf);
        }
        let src = intern(&record[0]);
        let dst = intern(&record[1]);
        let label: u8 = record[2]
            .parse()
            .with_context(|| format!("row {}: bad label {:?}", i + 1, &record[2]))?;
        for v in record.iter().skip(3) {
            let v: f64 = v
                .parse()
                .with_context(|| format!("row {}: bad feature value {v:?}", i + 1))?;
            features.push(v);
        }
        labels.push(label != 0);
        pairs.push((src, dst));
    }
    Dataset::from_parts(schema, features, labels, pairs).map_err(Into::into)
}

pub fn train_cmd(params: &TrainParams) -> Result<(), CliError> {
    let input = require_input(&params.input)?;
    let output = require_output(&params.output)?;
    let data = read_dataset_csv(input)?;

    if let Some(schema_path) = &params.schema {
        let text = fs::read_to_string(schema_path)
            .with_context(|| format!("cannot read {}", schema_path.display()))?;
        let sidecar: DatasetSidecar = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse {}", schema_path.display()))?;
        if sidecar.feature_names != data.schema() {
            return Err(usage(format!(
                "schema mismatch: sidecar says {:?}, csv has {:?}",
                sidecar.feature_names,
                data.schema()
            )));
        }
    }

    let cfg = TrainConfig {
        cost: params.cost,
        epochs: params.epochs,
        learning_rate: params.learning_rate,
        seed: params.seed,
        class_weighting: parse_class_weighting(&params.class_weighting)?,
        poly2: params.poly2,
        mini_batch: None,
    };
    let model = train(&data, &cfg).map_err(anyhow::Error::from)?;
    let mut text = model.to_json();
    text.push('\n');
    fs::write(output, text).with_context(|| format!("cannot write {}", output.display()))?;
    write_echo(output, params)?;
    Ok(())
}

fn init_thread_pool(threads: usize) {
    static POOL: OnceLock<()> = OnceLock::new();
    POOL.get_or_init(|| {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            log::debug!("thread pool already initialized: {e}");
        }
    });
}

pub fn experiment(params: &ExperimentParams, all_methods: bool) -> Result<(), CliError> {
    let input = require_input(&params.input)?;
    if let Some(threads) = params.threads {
        init_thread_pool(threads);
    }

    let methods: Vec<Method> = if all_methods {
        Method::ALL.to_vec()
    } else {
        params
            .methods
            .iter()
            .map(|s| s.parse::<Method>())
            .collect::<Result<_, _>>()
            .map_err(usage)?
    };
    if methods.is_empty() {
        return Err(usage("methods must not be empty"));
    }
    let model: ForecastModel = params.model.parse().map_err(|e| usage(format!("{e}")))?;

    let split = resolve_split(
        input,
        params.directed,
        &params.neighbor_mode,
        params.window,
        params.frames,
        params.target_frame,
    )?;

    let cfg = ExperimentConfig {
        window: params.window,
        num_frames: split.frames.len(),
        target_frame: split.target,
        methods,
        model,
        train: TrainConfig {
            cost: params.cost,
            epochs: params.epochs,
            learning_rate: params.learning_rate,
            seed: params.seed,
            class_weighting: parse_class_weighting(&params.class_weighting)?,
            poly2: params.poly2,
            mini_batch: None,
        },
        folds: params.folds,
        repeats: params.repeats,
        seed: params.seed,
        dataset: DatasetOptions {
            cumulative_graph: params.cumulative_graph,
            rate: RateConfig {
                count_deletions: params.count_deletions,
            },
        },
        snapshot_axis: params.snapshot_axis,
    };

    let report = run_experiment(&split.net, &cfg).map_err(anyhow::Error::from)?;
    print!("{}", report.table());

    // resolve the echo before writing anything
    let mut resolved = params.clone();
    resolved.frames = split.frames.len();
    resolved.target_frame = split.target;
    resolved.derived_repeat_seeds = (0..params.repeats as u64).map(|r| params.seed + r).collect();

    if let Some(path) = &params.output {
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
        write_echo(path, &resolved)?;
    }
    if let Some(path) = &params.csv {
        fs::write(path, report.runs_csv())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}
