//! Per-node link-formation-rate series and labeled-dataset assembly.
//!
//! A node's rate series counts, per frame, the incident edges that were not
//! present in the previous frame (the first frame counts everything). The
//! dataset builder turns a (history, target) frame split into one labeled
//! example per ordered node pair — all `n^2` of them, self-pairs included,
//! keeping the original class distribution intact.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::forecasting::{forecast, ForecastError, ForecastModel, TimeSeries};
use crate::temporal_graph::{sorted_difference_count, Directedness, Frame, NeighborMode, NodeId, UnionGraph};
use crate::topo_metrics::all_metrics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureSetKind {
    /// Topological metrics plus forecasted source/destination formation rates.
    Rpm,
    /// Topological metrics on the most recent graph only.
    Supervised,
    /// Forecasts of per-pair topological-metric time series.
    SupervisedMa,
}

impl fmt::Display for FeatureSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FeatureSetKind::Rpm => "rpm",
            FeatureSetKind::Supervised => "supervised",
            FeatureSetKind::SupervisedMa => "supervised-ma",
        };
        f.write_str(s)
    }
}

impl FromStr for FeatureSetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rpm" => Ok(FeatureSetKind::Rpm),
            "supervised" => Ok(FeatureSetKind::Supervised),
            "supervised-ma" | "supervised_ma" => Ok(FeatureSetKind::SupervisedMa),
            other => Err(format!(
                "unknown feature set {other:?} (expected rpm, supervised or supervised-ma)"
            )),
        }
    }
}

/// Feature names, in column order, for each feature-set kind.
pub fn feature_schema(kind: FeatureSetKind) -> &'static [&'static str] {
    match kind {
        FeatureSetKind::Supervised => &["cn", "jc", "pa", "aa"],
        FeatureSetKind::Rpm => &["cn", "jc", "pa", "aa", "rate_src", "rate_dst"],
        FeatureSetKind::SupervisedMa => &["cn_f", "jc_f", "pa_f", "aa_f"],
    }
}

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("history must contain at least one frame")]
    EmptyHistory,
    #[error("{kind} features need at least 2 history frames, got {frames}")]
    InsufficientHistory { kind: FeatureSetKind, frames: usize },
    #[error("node universe mismatch: history has {history} nodes, target has {target}")]
    NodeUniverseMismatch { history: usize, target: usize },
    #[error(transparent)]
    Forecast(#[from] ForecastError),
    #[error("dataset shape mismatch: {0}")]
    Shape(String),
}

/// How rate counting treats edge deletions and which incident edges count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RateConfig {
    /// Also count incident edges that disappeared since the previous frame.
    pub count_deletions: bool,
}

/// Per-frame counts of new incident links for one node.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeRateSeries {
    pub node: NodeId,
    pub series: TimeSeries,
}

fn incident_edges(g: &UnionGraph, x: NodeId) -> Vec<(NodeId, NodeId)> {
    let mut set = std::collections::BTreeSet::new();
    match g.directedness() {
        Directedness::Undirected => {
            for &y in g.out_neighbors(x) {
                set.insert((x.min(y), x.max(y)));
            }
        }
        Directedness::Directed => {
            for &y in g.out_neighbors(x) {
                set.insert((x, y));
            }
            if g.neighbor_mode() == NeighborMode::InOut {
                for &y in g.neighbors(x) {
                    if g.has_edge(y, x) {
                        set.insert((y, x));
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Rate series for a single node, built frame by frame from its incident
/// edge sets.
pub fn build_rate_series(frames: &[Frame], node: NodeId, cfg: &RateConfig) -> NodeRateSeries {
    assert!(!frames.is_empty(), "rate series needs at least one frame");
    let mut counts = Vec::with_capacity(frames.len());
    let mut prev: Vec<(NodeId, NodeId)> = Vec::new();
    for frame in frames {
        let cur = incident_edges(frame.graph(), node);
        let mut new_links = sorted_difference_count(&cur, &prev);
        if cfg.count_deletions {
            new_links += sorted_difference_count(&prev, &cur);
        }
        counts.push(new_links as f64);
        prev = cur;
    }
    NodeRateSeries {
        node,
        series: TimeSeries::new(counts).expect("counts nonempty and finite"),
    }
}

/// Rate series for every node at once; one sweep over each frame's edge diff
/// instead of a per-node pass.
pub fn build_all_rate_series(frames: &[Frame], cfg: &RateConfig) -> Vec<NodeRateSeries> {
    assert!(!frames.is_empty(), "rate series needs at least one frame");
    let num_nodes = frames[0].graph().num_nodes();
    let mut counts = vec![vec![0.0f64; frames.len()]; num_nodes];

    let bump = |counts: &mut Vec<Vec<f64>>, k: usize, g: &UnionGraph, (u, v): (NodeId, NodeId)| {
        match (g.directedness(), g.neighbor_mode()) {
            (Directedness::Directed, NeighborMode::OutOnly) => {
                counts[u as usize][k] += 1.0;
            }
            _ => {
                counts[u as usize][k] += 1.0;
                if u != v {
                    counts[v as usize][k] += 1.0;
                }
            }
        }
    };

    let empty: &[(NodeId, NodeId)] = &[];
    for (k, frame) in frames.iter().enumerate() {
        let g = frame.graph();
        let prev = if k == 0 { empty } else { frames[k - 1].graph().edges() };
        for &e in g.edges() {
            if prev.binary_search(&e).is_err() {
                bump(&mut counts, k, g, e);
            }
        }
        if cfg.count_deletions && k > 0 {
            for &e in prev {
                if g.edges().binary_search(&e).is_err() {
                    bump(&mut counts, k, g, e);
                }
            }
        }
    }

    counts
        .into_iter()
        .enumerate()
        .map(|(node, c)| NodeRateSeries {
            node: node as NodeId,
            series: TimeSeries::new(c).expect("counts nonempty and finite"),
        })
        .collect()
}

/// Options shared by dataset construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DatasetOptions {
    /// Compute topological features on the union of all history frames
    /// instead of the most recent frame only.
    pub cumulative_graph: bool,
    pub rate: RateConfig,
}

/// One labeled example: an ordered node pair, its feature row and whether the
/// pair is linked in the target frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledPair<'a> {
    pub pair: (NodeId, NodeId),
    pub features: &'a [f64],
    pub label: bool,
}

/// A labeled pair collection with a fixed feature schema. Feature rows are
/// stored contiguously; examples keep the row-major ordered-pair order they
/// were built in.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Vec<String>,
    features: Vec<f64>,
    labels: Vec<bool>,
    pairs: Vec<(NodeId, NodeId)>,
}

impl Dataset {
    pub fn from_parts(
        schema: Vec<String>,
        features: Vec<f64>,
        labels: Vec<bool>,
        pairs: Vec<(NodeId, NodeId)>,
    ) -> Result<Self, FeatureError> {
        let nf = schema.len();
        if nf == 0 {
            return Err(FeatureError::Shape("schema must not be empty".into()));
        }
        if features.len() != labels.len() * nf || labels.len() != pairs.len() {
            return Err(FeatureError::Shape(format!(
                "{} features / {} labels / {} pairs with {} columns",
                features.len(),
                labels.len(),
                pairs.len(),
                nf
            )));
        }
        Ok(Dataset {
            schema,
            features,
            labels,
            pairs,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_features(&self) -> usize {
        self.schema.len()
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn features_row(&self, i: usize) -> &[f64] {
        let nf = self.num_features();
        &self.features[i * nf..(i + 1) * nf]
    }

    pub fn get(&self, i: usize) -> LabeledPair<'_> {
        LabeledPair {
            pair: self.pairs[i],
            features: self.features_row(i),
            label: self.labels[i],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = LabeledPair<'_>> {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// (positives, negatives)
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&l| l).count();
        (pos, self.len() - pos)
    }

    /// Copy the given rows into a new dataset with the same schema.
    pub fn subset(&self, rows: &[usize]) -> Dataset {
        let nf = self.num_features();
        let mut features = Vec::with_capacity(rows.len() * nf);
        let mut labels = Vec::with_capacity(rows.len());
        let mut pairs = Vec::with_capacity(rows.len());
        for &r in rows {
            features.extend_from_slice(self.features_row(r));
            labels.push(self.labels[r]);
            pairs.push(self.pairs[r]);
        }
        Dataset {
            schema: self.schema.clone(),
            features,
            labels,
            pairs,
        }
    }

    /// CSV export: `src,dst,label,<feature columns>`. Node ids are written
    /// through the label table when one is supplied.
    pub fn write_csv<W: Write>(&self, mut w: W, node_labels: Option<&[String]>) -> io::Result<()> {
        write!(w, "src,dst,label")?;
        for name in &self.schema {
            write!(w, ",{name}")?;
        }
        writeln!(w)?;
        let name = |id: NodeId| -> String {
            match node_labels {
                Some(t) => t[id as usize].clone(),
                None => id.to_string(),
            }
        };
        for i in 0..self.len() {
            let (s, d) = self.pairs[i];
            write!(w, "{},{},{}", name(s), name(d), self.labels[i] as u8)?;
            for v in self.features_row(i) {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn check_universe(history: &[Frame], target: &Frame) -> Result<usize, FeatureError> {
    let n = target.graph().num_nodes();
    for f in history {
        if f.graph().num_nodes() != n {
            return Err(FeatureError::NodeUniverseMismatch {
                history: f.graph().num_nodes(),
                target: n,
            });
        }
    }
    Ok(n)
}

/// Build the labeled ordered-pair dataset for one (history, target) split.
///
/// Every ordered pair (self-pairs included) over the node universe becomes one
/// example, `n^2` in total; the label records whether the pair is linked in
/// the target frame. Feature content depends on `kind`:
///
/// - `Supervised`: the four topological metrics on the most recent history
///   graph (or the cumulative union when configured).
/// - `Rpm`: the Supervised columns plus forecasted formation rates of the
///   source and destination nodes.
/// - `SupervisedMa`: one forecast per metric of the pair's per-frame metric
///   time series.
pub fn build_dataset(
    history: &[Frame],
    target: &Frame,
    kind: FeatureSetKind,
    model: &ForecastModel,
    opts: &DatasetOptions,
) -> Result<Dataset, FeatureError> {
    if history.is_empty() {
        return Err(FeatureError::EmptyHistory);
    }
    if matches!(kind, FeatureSetKind::Rpm | FeatureSetKind::SupervisedMa) && history.len() < 2 {
        return Err(FeatureError::InsufficientHistory {
            kind,
            frames: history.len(),
        });
    }
    model.validate()?;
    let num_nodes = check_universe(history, target)?;

    // Graph the static topological features are computed on.
    let last = history.last().expect("nonempty history");
    let cumulative;
    let base: &UnionGraph = if opts.cumulative_graph {
        let g = last.graph();
        cumulative = UnionGraph::from_edges(
            num_nodes,
            g.directedness(),
            g.neighbor_mode(),
            history.iter().flat_map(|f| f.graph().edges().iter().copied()),
        );
        &cumulative
    } else {
        last.graph()
    };

    // Forecasted formation rate per node, shared by every pair in the row.
    let rate_forecast: Vec<f64> = if kind == FeatureSetKind::Rpm {
        build_all_rate_series(history, &opts.rate)
            .iter()
            .map(|r| forecast(model, &r.series))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };

    let schema: Vec<String> = feature_schema(kind).iter().map(|s| s.to_string()).collect();
    let nf = schema.len();
    let rows = num_nodes * num_nodes;
    let mut features = vec![0.0f64; rows * nf];
    let mut labels = vec![false; rows];

    let history_graphs: Vec<&UnionGraph> = history.iter().map(|f| f.graph()).collect();
    let target_graph = target.graph();

    let feature_rows = features.par_chunks_mut(num_nodes * nf);
    let label_rows = labels.par_chunks_mut(num_nodes);
    feature_rows
        .zip(label_rows)
        .enumerate()
        .try_for_each(|(src, (frow, lrow))| -> Result<(), FeatureError> {
            let src = src as NodeId;
            for &dst in target_graph.out_neighbors(src) {
                lrow[dst as usize] = true;
            }
            match kind {
                FeatureSetKind::Supervised => {
                    for dst in 0..num_nodes {
                        let m = all_metrics(base, src, dst as NodeId);
                        frow[dst * nf..dst * nf + 4].copy_from_slice(&m);
                    }
                }
                FeatureSetKind::Rpm => {
                    let rate_src = rate_forecast[src as usize];
                    for dst in 0..num_nodes {
                        let m = all_metrics(base, src, dst as NodeId);
                        let cell = &mut frow[dst * nf..(dst + 1) * nf];
                        cell[..4].copy_from_slice(&m);
                        cell[4] = rate_src;
                        cell[5] = rate_forecast[dst];
                    }
                }
                FeatureSetKind::SupervisedMa => {
                    let mut series = vec![Vec::with_capacity(history_graphs.len()); 4];
                    for dst in 0..num_nodes {
                        for s in series.iter_mut() {
                            s.clear();
                        }
                        for g in &history_graphs {
                            let m = all_metrics(g, src, dst as NodeId);
                            for (s, v) in series.iter_mut().zip(m) {
                                s.push(v);
                            }
                        }
                        for (col, s) in series.iter().enumerate() {
                            let ts = TimeSeries::new(s.clone())?;
                            frow[dst * nf + col] = forecast(model, &ts)?;
                        }
                    }
                }
            }
            Ok(())
        })?;

    let pairs: Vec<(NodeId, NodeId)> = (0..num_nodes as NodeId)
        .flat_map(|s| (0..num_nodes as NodeId).map(move |d| (s, d)))
        .collect();

    Dataset::from_parts(schema, features, labels, pairs)
}
