//! AUROC scoring, stratified repeated cross-validation, unsupervised
//! baselines, paired t-tests and the end-to-end method comparison.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::classifier::{train, TrainConfig, TrainError};
use crate::forecasting::ForecastModel;
use crate::rate_features::{
    build_dataset, Dataset, DatasetOptions, FeatureError, FeatureSetKind,
};
use crate::temporal_graph::{
    build_frames, Frame, GraphError, NodeId, TemporalNetwork, UnionGraph,
};
use crate::topo_metrics::{score_ordered_pair_grid, MetricKind};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("score/label lengths differ: {scores} vs {labels}")]
    LengthMismatch { scores: usize, labels: usize },
    #[error("both classes must be present")]
    SingleClass,
    #[error("non-finite score at index {0}")]
    NonFiniteScore(usize),
    #[error("need at least 2 paired samples, got {0}")]
    TooFewSamples(usize),
    #[error("fold count must be >= 2, got {0}")]
    BadFoldCount(usize),
    #[error("{label} class has {size} members, fewer than {folds} folds")]
    ClassSmallerThanFolds {
        label: u8,
        size: usize,
        folds: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error("method {method} failed: {source}")]
    Method {
        method: String,
        #[source]
        source: Box<EvalError>,
    },
}

/// AUROC with the class counts it was computed over.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RocResult {
    pub auroc: f64,
    pub positives: usize,
    pub negatives: usize,
}

/// Rank-based AUROC with tie correction: the probability that a random
/// positive outranks a random negative, ties counting one half.
pub fn auroc(scores: &[f64], labels: &[bool]) -> Result<RocResult, EvalError> {
    if scores.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    if let Some(i) = scores.iter().position(|s| s.is_nan()) {
        return Err(EvalError::NonFiniteScore(i));
    }
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(EvalError::SingleClass);
    }

    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_unstable_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("no NaN"));

    // average ranks across tie groups, accumulate positive ranks
    let mut pos_rank_sum = 0.0f64;
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && scores[idx[j]] == scores[idx[i]] {
            j += 1;
        }
        let avg_rank = (i + j + 1) as f64 / 2.0; // 1-based ranks i+1..=j
        for &k in &idx[i..j] {
            if labels[k] {
                pos_rank_sum += avg_rank;
            }
        }
        i = j;
    }

    let p = positives as f64;
    let n = negatives as f64;
    let value = (pos_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
    Ok(RocResult {
        auroc: value,
        positives,
        negatives,
    })
}

/// Deterministic stratified fold assignment: per class, indices are shuffled
/// and dealt round-robin, so per-class fold sizes differ by at most one.
/// Returns the fold index of every row.
pub fn stratified_kfold(labels: &[bool], k: usize, seed: u64) -> Result<Vec<usize>, EvalError> {
    if k < 2 {
        return Err(EvalError::BadFoldCount(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; labels.len()];
    for class in [true, false] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < k {
            return Err(EvalError::ClassSmallerThanFolds {
                label: class as u8,
                size: members.len(),
                folds: k,
            });
        }
        members.shuffle(&mut rng);
        for (pos, &row) in members.iter().enumerate() {
            assignment[row] = pos % k;
        }
    }
    Ok(assignment)
}

/// AUROC of one raw topological metric over all ordered pairs against the
/// target frame's links.
pub fn unsupervised_auroc(
    g: &UnionGraph,
    target: &Frame,
    kind: MetricKind,
) -> Result<RocResult, EvalError> {
    let n = g.num_nodes();
    if target.graph().num_nodes() != n {
        return Err(EvalError::Feature(FeatureError::NodeUniverseMismatch {
            history: n,
            target: target.graph().num_nodes(),
        }));
    }
    let scores = score_ordered_pair_grid(g, kind);
    let mut labels = vec![false; n * n];
    for src in 0..n as NodeId {
        for &dst in target.graph().out_neighbors(src) {
            labels[src as usize * n + dst as usize] = true;
        }
    }
    auroc(&scores, &labels)
}

/// Two-tailed paired Student t-test; returns the p-value.
///
/// All-zero differences give p = 1 by convention; zero variance with nonzero
/// mean gives p = 0 (the statistic diverges).
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<f64, EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::LengthMismatch {
            scores: a.len(),
            labels: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(EvalError::TooFewSamples(a.len()));
    }
    let n = a.len() as f64;
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if diffs.iter().all(|&d| d == 0.0) {
        return Ok(1.0);
    }
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0);
    if var == 0.0 {
        return Ok(0.0);
    }
    let t = mean / (var / n).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 1.0).expect("valid dof");
    Ok(2.0 * dist.cdf(-t.abs()))
}

/// The methods compared by [`run_experiment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Method {
    #[serde(rename = "rpm")]
    Rpm,
    #[serde(rename = "supervised-ma")]
    SupervisedMa,
    #[serde(rename = "supervised")]
    Supervised,
    #[serde(rename = "cn")]
    CommonNeighbors,
    #[serde(rename = "jc")]
    JaccardCoefficient,
    #[serde(rename = "pa")]
    PreferentialAttachment,
    #[serde(rename = "aa")]
    AdamicAdar,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Rpm,
        Method::SupervisedMa,
        Method::Supervised,
        Method::CommonNeighbors,
        Method::JaccardCoefficient,
        Method::PreferentialAttachment,
        Method::AdamicAdar,
    ];

    pub fn is_supervised(&self) -> bool {
        self.feature_kind().is_some()
    }

    fn feature_kind(&self) -> Option<FeatureSetKind> {
        match self {
            Method::Rpm => Some(FeatureSetKind::Rpm),
            Method::SupervisedMa => Some(FeatureSetKind::SupervisedMa),
            Method::Supervised => Some(FeatureSetKind::Supervised),
            _ => None,
        }
    }

    fn metric_kind(&self) -> Option<MetricKind> {
        match self {
            Method::CommonNeighbors => Some(MetricKind::CommonNeighbors),
            Method::JaccardCoefficient => Some(MetricKind::JaccardCoefficient),
            Method::PreferentialAttachment => Some(MetricKind::PreferentialAttachment),
            Method::AdamicAdar => Some(MetricKind::AdamicAdar),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Rpm => "RPM",
            Method::SupervisedMa => "Supervised-MA",
            Method::Supervised => "Supervised",
            Method::CommonNeighbors => "CN",
            Method::JaccardCoefficient => "JC",
            Method::PreferentialAttachment => "PA",
            Method::AdamicAdar => "AA",
        };
        f.write_str(s)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rpm" => Ok(Method::Rpm),
            "supervised-ma" | "supervised_ma" => Ok(Method::SupervisedMa),
            "supervised" => Ok(Method::Supervised),
            "cn" => Ok(Method::CommonNeighbors),
            "jc" => Ok(Method::JaccardCoefficient),
            "pa" => Ok(Method::PreferentialAttachment),
            "aa" => Ok(Method::AdamicAdar),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Everything the experiment runner needs besides the network itself.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExperimentConfig {
    /// Frame length in snapshots (the window of prediction).
    pub window: usize,
    /// Number of frames to slice the network into.
    pub num_frames: usize,
    /// 1-based frame used as the prediction target; earlier frames are
    /// history.
    pub target_frame: usize,
    pub methods: Vec<Method>,
    pub model: ForecastModel,
    pub train: TrainConfig,
    pub folds: usize,
    pub repeats: usize,
    /// Top-level seed. Repeat r uses `seed + r`; the sliding-target axis uses
    /// `seed + 10_000 + t` for target frame t.
    pub seed: u64,
    pub dataset: DatasetOptions,
    /// Also evaluate every admissible target frame and t-test across them.
    pub snapshot_axis: bool,
}

impl ExperimentConfig {
    pub fn new(window: usize, num_frames: usize) -> Self {
        ExperimentConfig {
            window,
            num_frames,
            target_frame: num_frames,
            methods: Method::ALL.to_vec(),
            model: ForecastModel::WeightedMovingAverage {
                weights: vec![0.2, 0.3, 0.5],
            },
            train: TrainConfig::default(),
            folds: 10,
            repeats: 10,
            seed: 0,
            dataset: DatasetOptions::default(),
            snapshot_axis: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MethodReport {
    pub method: Method,
    pub mean: f64,
    /// Sample standard deviation of the per-run values.
    pub stddev: f64,
    /// Per-(repeat, fold) AUROC for supervised methods; the deterministic
    /// AUROC replicated per repeat for unsupervised ones.
    pub runs: Vec<f64>,
    /// Mean AUROC per sliding target frame, when the snapshot axis ran.
    pub per_target: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TTestEntry {
    pub vs: Method,
    /// Paired over (repeat, fold) runs; supervised baselines only.
    pub p_folds: Option<f64>,
    /// Paired over sliding target frames, when at least two are admissible.
    pub p_snapshots: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExperimentReport {
    pub methods: Vec<MethodReport>,
    /// One entry per non-RPM method, present only when RPM itself ran.
    pub t_tests: Vec<TTestEntry>,
    /// Target frames covered by the snapshot axis (empty when it did not run).
    pub target_frames: Vec<usize>,
    pub folds: usize,
    pub repeats: usize,
}

impl ExperimentReport {
    pub fn method(&self, m: Method) -> Option<&MethodReport> {
        self.methods.iter().find(|r| r.method == m)
    }

    /// Plain-text summary table.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:<16} {:>8} {:>8} {:>6}\n", "method", "mean", "stddev", "runs"));
        for m in &self.methods {
            out.push_str(&format!(
                "{:<16} {:>8.4} {:>8.4} {:>6}\n",
                m.method.to_string(),
                m.mean,
                m.stddev,
                m.runs.len()
            ));
        }
        if !self.t_tests.is_empty() {
            out.push_str("paired t-tests vs RPM:\n");
            for t in &self.t_tests {
                let fmt_p = |p: Option<f64>| match p {
                    Some(p) => format!("{p:.3e}"),
                    None => "-".to_string(),
                };
                out.push_str(&format!(
                    "  {:<16} p(folds)={:<10} p(targets)={}\n",
                    t.vs.to_string(),
                    fmt_p(t.p_folds),
                    fmt_p(t.p_snapshots)
                ));
            }
        }
        out
    }

    /// Long-format CSV of every per-run value: `method,run,auroc`.
    pub fn runs_csv(&self) -> String {
        let mut out = String::from("method,run,auroc\n");
        for m in &self.methods {
            for (i, v) in m.runs.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", m.method, i, v));
            }
        }
        out
    }
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_stddev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean_of(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

/// Repeated stratified CV of a trained scorer over a dataset. Returns one
/// test-fold AUROC per (repeat, fold), repeat-major. Repeats run in parallel;
/// the output order is fixed.
pub fn cv_auroc_runs(
    data: &Dataset,
    folds: usize,
    repeats: usize,
    seed: u64,
    train_cfg: &TrainConfig,
) -> Result<Vec<f64>, EvalError> {
    let per_repeat: Vec<Result<Vec<f64>, EvalError>> = (0..repeats)
        .into_par_iter()
        .map(|r| {
            let assignment = stratified_kfold(data.labels(), folds, seed + r as u64)?;
            let mut values = Vec::with_capacity(folds);
            for fold in 0..folds {
                let train_rows: Vec<usize> =
                    (0..data.len()).filter(|&i| assignment[i] != fold).collect();
                let test_rows: Vec<usize> =
                    (0..data.len()).filter(|&i| assignment[i] == fold).collect();
                let model = train(
                    &data.subset(&train_rows),
                    &TrainConfig {
                        seed: seed + r as u64,
                        ..train_cfg.clone()
                    },
                )?;
                let test = data.subset(&test_rows);
                let scores = model.scores_for(&test)?;
                values.push(auroc(&scores, test.labels())?.auroc);
            }
            Ok(values)
        })
        .collect();

    let mut runs = Vec::with_capacity(folds * repeats);
    for r in per_repeat {
        runs.extend(r?);
    }
    Ok(runs)
}

/// The graph the "current structure" features and unsupervised baselines are
/// computed on: the last history frame, or the cumulative union if configured.
fn base_graph(history: &[Frame], opts: &DatasetOptions) -> UnionGraph {
    let last = history.last().expect("nonempty history");
    if opts.cumulative_graph {
        let g = last.graph();
        UnionGraph::from_edges(
            g.num_nodes(),
            g.directedness(),
            g.neighbor_mode(),
            history.iter().flat_map(|f| f.graph().edges().iter().copied()),
        )
    } else {
        last.graph().clone()
    }
}

fn single_split_runs(
    history: &[Frame],
    target: &Frame,
    method: Method,
    cfg: &ExperimentConfig,
    repeats: usize,
) -> Result<Vec<f64>, EvalError> {
    if let Some(kind) = method.feature_kind() {
        let data = build_dataset(history, target, kind, &cfg.model, &cfg.dataset)?;
        cv_auroc_runs(&data, cfg.folds, repeats, cfg.seed, &cfg.train)
    } else {
        let metric = method.metric_kind().expect("metric method");
        let g = base_graph(history, &cfg.dataset);
        let value = unsupervised_auroc(&g, target, metric)?.auroc;
        Ok(vec![value; repeats])
    }
}

/// Mean AUROC of one method on one (history, target) split, with a single CV
/// pass for supervised methods. Used for the sliding-target axis.
fn single_target_mean(
    frames: &[Frame],
    target_index: usize,
    method: Method,
    cfg: &ExperimentConfig,
) -> Result<f64, EvalError> {
    let history = &frames[..target_index - 1];
    let target = &frames[target_index - 1];
    if let Some(kind) = method.feature_kind() {
        let data = build_dataset(history, target, kind, &cfg.model, &cfg.dataset)?;
        let runs = cv_auroc_runs(&data, cfg.folds, 1, cfg.seed + 10_000 + target_index as u64, &cfg.train)?;
        Ok(mean_of(&runs))
    } else {
        let metric = method.metric_kind().expect("metric method");
        let g = base_graph(history, &cfg.dataset);
        Ok(unsupervised_auroc(&g, target, metric)?.auroc)
    }
}

/// Run the full method comparison on one network.
///
/// Supervised methods get `repeats` runs of stratified `folds`-fold CV on the
/// main (history, target) split; unsupervised baselines contribute their
/// single deterministic AUROC replicated per repeat. When RPM participates,
/// every other method is t-tested against it: supervised baselines pair
/// per-(repeat, fold), and — when the snapshot axis has at least two
/// admissible target frames — every baseline also pairs per target frame.
pub fn run_experiment(
    net: &TemporalNetwork,
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport, EvalError> {
    let framed = build_frames(net, cfg.window, cfg.num_frames)?;
    let (history, target) = framed.history_and_target(cfg.target_frame)?;

    let annotate = |m: Method| move |e: EvalError| EvalError::Method {
        method: m.to_string(),
        source: Box::new(e),
    };

    let mut method_runs: Vec<(Method, Vec<f64>)> = Vec::with_capacity(cfg.methods.len());
    for &m in &cfg.methods {
        let runs = single_split_runs(history, target, m, cfg, cfg.repeats).map_err(annotate(m))?;
        method_runs.push((m, runs));
    }

    // Sliding-target axis: evaluate each admissible target frame once.
    let needs_two_history = cfg
        .methods
        .iter()
        .any(|m| matches!(m, Method::Rpm | Method::SupervisedMa));
    let min_target = if needs_two_history { 3 } else { 2 };
    let target_frames: Vec<usize> = if cfg.snapshot_axis && cfg.num_frames >= min_target + 1 {
        (min_target..=cfg.num_frames).collect()
    } else {
        Vec::new()
    };

    let mut per_target: Vec<Option<Vec<f64>>> = vec![None; cfg.methods.len()];
    if !target_frames.is_empty() {
        for (mi, &m) in cfg.methods.iter().enumerate() {
            let mut series = Vec::with_capacity(target_frames.len());
            for &t in &target_frames {
                series.push(single_target_mean(framed.frames(), t, m, cfg).map_err(annotate(m))?);
            }
            per_target[mi] = Some(series);
        }
    }

    let rpm_index = cfg.methods.iter().position(|&m| m == Method::Rpm);
    let mut t_tests = Vec::new();
    if let Some(ri) = rpm_index {
        for (mi, &(m, ref runs)) in method_runs.iter().enumerate() {
            if m == Method::Rpm {
                continue;
            }
            let p_folds = if m.is_supervised() && runs.len() >= 2 {
                Some(paired_t_test(&method_runs[ri].1, runs)?)
            } else {
                None
            };
            let p_snapshots = match (&per_target[ri], &per_target[mi]) {
                (Some(a), Some(b)) if a.len() >= 2 => Some(paired_t_test(a, b)?),
                _ => None,
            };
            t_tests.push(TTestEntry {
                vs: m,
                p_folds,
                p_snapshots,
            });
        }
    }

    let methods = method_runs
        .into_iter()
        .zip(per_target)
        .map(|((method, runs), per_target)| MethodReport {
            method,
            mean: mean_of(&runs),
            stddev: sample_stddev(&runs),
            runs,
            per_target,
        })
        .collect();

    Ok(ExperimentReport {
        methods,
        t_tests,
        target_frames,
        folds: cfg.folds,
        repeats: cfg.repeats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn auroc_perfect_separation() {
        let r = auroc(&[0.9, 0.1], &[true, false]).unwrap();
        assert_eq!(r.auroc, 1.0);
        assert_eq!((r.positives, r.negatives), (1, 1));
    }

    #[test]
    fn auroc_all_ties_is_half() {
        let r = auroc(&[0.4, 0.4, 0.4, 0.4], &[true, false, true, false]).unwrap();
        assert_eq!(r.auroc, 0.5);
    }

    #[test]
    fn auroc_mixed_hand_value() {
        // pairs: 0.8 > 0.6 wins, 0.4 < 0.6 loses -> 1/2
        let r = auroc(&[0.8, 0.6, 0.4], &[true, false, true]).unwrap();
        assert!((r.auroc - 0.5).abs() < 1e-15);
    }

    #[test]
    fn auroc_rejects_degenerate_input() {
        assert!(matches!(
            auroc(&[0.1], &[true, false]),
            Err(EvalError::LengthMismatch { .. })
        ));
        assert!(matches!(auroc(&[0.1, 0.2], &[true, true]), Err(EvalError::SingleClass)));
        assert!(matches!(
            auroc(&[f64::NAN, 0.2], &[true, false]),
            Err(EvalError::NonFiniteScore(0))
        ));
    }

    fn brute_force_auroc(scores: &[f64], labels: &[bool]) -> f64 {
        let mut wins = 0.0;
        let mut total = 0.0;
        for (i, &li) in labels.iter().enumerate() {
            if !li {
                continue;
            }
            for (j, &lj) in labels.iter().enumerate() {
                if lj {
                    continue;
                }
                total += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
        wins / total
    }

    #[test]
    fn kfold_divisible_counts_are_exact() {
        let labels: Vec<bool> = (0..100).map(|i| i < 10).collect();
        let assignment = stratified_kfold(&labels, 10, 1).unwrap();
        for fold in 0..10 {
            let pos = (0..100).filter(|&i| assignment[i] == fold && labels[i]).count();
            let neg = (0..100).filter(|&i| assignment[i] == fold && !labels[i]).count();
            assert_eq!((pos, neg), (1, 9));
        }
    }

    #[test]
    fn kfold_remainder_goes_to_one_fold() {
        let labels: Vec<bool> = (0..101).map(|i| i < 11).collect();
        let assignment = stratified_kfold(&labels, 10, 2).unwrap();
        let mut with_two = 0;
        for fold in 0..10 {
            let pos = (0..101).filter(|&i| assignment[i] == fold && labels[i]).count();
            assert!((1..=2).contains(&pos));
            if pos == 2 {
                with_two += 1;
            }
        }
        assert_eq!(with_two, 1);
    }

    #[test]
    fn kfold_rejects_degenerate_requests() {
        let labels = vec![true, false, true, false];
        assert!(matches!(stratified_kfold(&labels, 1, 0), Err(EvalError::BadFoldCount(1))));
        assert!(matches!(
            stratified_kfold(&labels, 3, 0),
            Err(EvalError::ClassSmallerThanFolds { .. })
        ));
    }

    #[test]
    fn t_test_identical_series_is_one() {
        let a = [0.5, 0.6, 0.7];
        assert_eq!(paired_t_test(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn t_test_constant_nonzero_difference_is_zero() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [0.0, 1.0, 2.0, 3.0];
        let p = paired_t_test(&a, &b).unwrap();
        assert!(p < 1e-12);
    }

    #[test]
    fn t_test_alternating_differences_is_one() {
        let a = [1.0, 0.0, 1.0, 0.0];
        let b = [0.0, 1.0, 0.0, 1.0];
        assert!((paired_t_test(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn t_test_against_scipy_reference() {
        // scipy.stats.ttest_rel: t = 2.557448, df = 4, p = 0.0628076110007
        let a = [0.88, 0.91, 0.87, 0.90, 0.93];
        let b = [0.85, 0.89, 0.88, 0.86, 0.90];
        let p = paired_t_test(&a, &b).unwrap();
        assert!((p - 0.06280761100070116).abs() < 1e-10, "p = {p}");
    }

    #[test]
    fn t_test_is_symmetric() {
        let a = [0.9, 0.8, 0.85, 0.95];
        let b = [0.7, 0.82, 0.8, 0.9];
        let p1 = paired_t_test(&a, &b).unwrap();
        let p2 = paired_t_test(&b, &a).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn t_test_rejects_short_input() {
        assert!(matches!(paired_t_test(&[1.0], &[2.0]), Err(EvalError::TooFewSamples(1))));
        assert!(matches!(
            paired_t_test(&[1.0, 2.0], &[2.0]),
            Err(EvalError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn method_strings_round_trip() {
        for m in Method::ALL {
            let s = match m {
                Method::Rpm => "rpm",
                Method::SupervisedMa => "supervised-ma",
                Method::Supervised => "supervised",
                Method::CommonNeighbors => "cn",
                Method::JaccardCoefficient => "jc",
                Method::PreferentialAttachment => "pa",
                Method::AdamicAdar => "aa",
            };
            assert_eq!(s.parse::<Method>().unwrap(), m);
        }
        assert!("katz".parse::<Method>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn auroc_matches_brute_force(
            scores in proptest::collection::vec(0..10i32, 4..120),
            flip in proptest::collection::vec(proptest::bool::ANY, 4..120),
        ) {
            let n = scores.len().min(flip.len());
            // quantized scores produce deliberate ties
            let scores: Vec<f64> = scores[..n].iter().map(|&s| s as f64 / 3.0).collect();
            let labels: Vec<bool> = flip[..n].to_vec();
            let pos = labels.iter().filter(|&&l| l).count();
            prop_assume!(pos > 0 && pos < n);
            let fast = auroc(&scores, &labels).unwrap().auroc;
            let brute = brute_force_auroc(&scores, &labels);
            prop_assert!((fast - brute).abs() < 1e-12);

            // complement rule
            let negated: Vec<f64> = scores.iter().map(|s| -s).collect();
            let comp = auroc(&negated, &labels).unwrap().auroc;
            prop_assert!((fast + comp - 1.0).abs() < 1e-12);

            // invariance under a strictly increasing transform
            let warped: Vec<f64> = scores.iter().map(|s| (s * 0.7).exp() + 3.0 * s).collect();
            let w = auroc(&warped, &labels).unwrap().auroc;
            prop_assert!((fast - w).abs() < 1e-12);
        }

        #[test]
        fn kfold_partitions_exactly(
            pos in 5usize..40,
            neg in 5usize..200,
            k in 2usize..5,
            seed in 0u64..1000,
        ) {
            prop_assume!(pos >= k && neg >= k);
            let labels: Vec<bool> = (0..pos + neg).map(|i| i < pos).collect();
            let assignment = stratified_kfold(&labels, k, seed).unwrap();
            // every row lands in exactly one fold (assignment is total)
            prop_assert_eq!(assignment.len(), pos + neg);
            prop_assert!(assignment.iter().all(|&f| f < k));
            // per-class sizes differ by at most one
            for class in [true, false] {
                let sizes: Vec<usize> = (0..k)
                    .map(|f| (0..labels.len()).filter(|&i| assignment[i] == f && labels[i] == class).count())
                    .collect();
                let lo = sizes.iter().min().unwrap();
                let hi = sizes.iter().max().unwrap();
                prop_assert!(hi - lo <= 1);
            }
            // determinism
            let again = stratified_kfold(&labels, k, seed).unwrap();
            prop_assert_eq!(assignment, again);
        }
    }
}
