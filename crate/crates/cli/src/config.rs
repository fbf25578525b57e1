//! Resolved per-command parameter sets.
//!
//! Every command resolves its parameters from (1) built-in defaults, (2) an
//! optional `--config` JSON file, (3) command-line flag overrides, in that
//! order. The fully-resolved set is echoed as JSON next to the command's
//! output, and that echo is itself a valid `--config` file: re-running it
//! reproduces the outputs byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsParams {
    pub command: String,
    pub input: Option<PathBuf>,
    pub directed: bool,
    pub output: Option<PathBuf>,
}

impl Default for StatsParams {
    fn default() -> Self {
        StatsParams {
            command: "stats".into(),
            input: None,
            directed: false,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthParams {
    pub command: String,
    pub nodes: usize,
    pub snapshots: usize,
    pub base_rate: f64,
    pub hot_fraction: f64,
    pub hot_multiplier: f64,
    pub churn: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            command: "synth".into(),
            nodes: 100,
            snapshots: 10,
            base_rate: 0.5,
            hot_fraction: 0.1,
            hot_multiplier: 5.0,
            churn: 0.3,
            seed: 0,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeaturizeParams {
    pub command: String,
    pub input: Option<PathBuf>,
    pub directed: bool,
    pub neighbor_mode: String,
    pub window: usize,
    pub frames: usize,
    /// 1-based target frame; 0 means "the last frame".
    pub target_frame: usize,
    pub kind: String,
    pub model: String,
    pub cumulative_graph: bool,
    pub count_deletions: bool,
    /// Dump raw metric scores (`src,dst,cn,jc,pa,aa`) instead of a labeled
    /// dataset.
    pub raw: bool,
    pub output: Option<PathBuf>,
}

impl Default for FeaturizeParams {
    fn default() -> Self {
        FeaturizeParams {
            command: "featurize".into(),
            input: None,
            directed: false,
            neighbor_mode: "in-out".into(),
            window: 1,
            frames: 0,
            target_frame: 0,
            kind: "rpm".into(),
            model: "wma:0.2,0.3,0.5".into(),
            cumulative_graph: false,
            count_deletions: false,
            raw: false,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainParams {
    pub command: String,
    pub input: Option<PathBuf>,
    /// Optional sidecar to validate the feature columns against.
    pub schema: Option<PathBuf>,
    pub cost: f64,
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
    pub class_weighting: String,
    pub poly2: bool,
    pub output: Option<PathBuf>,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            command: "train".into(),
            input: None,
            schema: None,
            cost: 1.0,
            epochs: 50,
            learning_rate: 0.1,
            seed: 0,
            class_weighting: "balanced".into(),
            poly2: false,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentParams {
    pub command: String,
    pub input: Option<PathBuf>,
    pub directed: bool,
    pub neighbor_mode: String,
    pub window: usize,
    pub frames: usize,
    /// 1-based target frame; 0 means "the last frame".
    pub target_frame: usize,
    pub methods: Vec<String>,
    pub model: String,
    pub cost: f64,
    pub epochs: usize,
    pub learning_rate: f64,
    pub class_weighting: String,
    pub poly2: bool,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    pub cumulative_graph: bool,
    pub count_deletions: bool,
    pub snapshot_axis: bool,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Informational: the per-repeat fold seeds this run will use.
    pub derived_repeat_seeds: Vec<u64>,
}

impl Default for ExperimentParams {
    fn default() -> Self {
        ExperimentParams {
            command: "evaluate".into(),
            input: None,
            directed: false,
            neighbor_mode: "in-out".into(),
            window: 1,
            frames: 0,
            target_frame: 0,
            methods: vec![
                "rpm".into(),
                "supervised-ma".into(),
                "supervised".into(),
                "cn".into(),
                "jc".into(),
                "pa".into(),
                "aa".into(),
            ],
            model: "wma:0.2,0.3,0.5".into(),
            cost: 1.0,
            epochs: 50,
            learning_rate: 0.1,
            class_weighting: "balanced".into(),
            poly2: false,
            folds: 10,
            repeats: 10,
            seed: 0,
            cumulative_graph: false,
            count_deletions: false,
            snapshot_axis: true,
            threads: None,
            output: None,
            csv: None,
            derived_repeat_seeds: Vec::new(),
        }
    }
}

/// Load a params struct from an optional `--config` file, falling back to
/// defaults.
pub fn load_params<P: DeserializeOwned + Default>(config: Option<&Path>) -> Result<P> {
    match config {
        None => Ok(P::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("cannot parse config file {}", path.display()))
        }
    }
}

/// Where the resolved-config echo for an output file lives.
pub fn echo_path(output: &Path) -> PathBuf {
    output.with_extension("config.json")
}

/// Write the resolved parameter echo next to the output file.
pub fn write_echo<P: Serialize>(output: &Path, params: &P) -> Result<()> {
    let path = echo_path(output);
    let mut text = serde_json::to_string_pretty(params)?;
    text.push('\n');
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
