//! Topological similarity scores for node pairs on a frame's union graph.
//!
//! Four metrics are supported: common neighbors, preferential attachment,
//! Jaccard coefficient and Adamic-Adar. They double as unsupervised baselines
//! and as classifier features.
//!
//! Conventions fixed here:
//! - Adamic-Adar uses the natural logarithm; common neighbors with degree <= 1
//!   are skipped so the score stays finite.
//! - Jaccard of two empty neighborhoods is 0.
//! - A self-pair scores 0 on every metric unless the graph actually contains
//!   a self-loop at that node.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::temporal_graph::{NodeId, UnionGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    CommonNeighbors,
    PreferentialAttachment,
    JaccardCoefficient,
    AdamicAdar,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::CommonNeighbors,
        MetricKind::PreferentialAttachment,
        MetricKind::JaccardCoefficient,
        MetricKind::AdamicAdar,
    ];

    pub fn short_name(&self) -> &'static str {
        match self {
            MetricKind::CommonNeighbors => "cn",
            MetricKind::PreferentialAttachment => "pa",
            MetricKind::JaccardCoefficient => "jc",
            MetricKind::AdamicAdar => "aa",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cn" => Ok(MetricKind::CommonNeighbors),
            "pa" => Ok(MetricKind::PreferentialAttachment),
            "jc" => Ok(MetricKind::JaccardCoefficient),
            "aa" => Ok(MetricKind::AdamicAdar),
            other => Err(format!("unknown metric {other:?} (expected cn, pa, jc or aa)")),
        }
    }
}

/// A scored node pair; `value` is finite and nonnegative for all four metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore {
    pub pair: (NodeId, NodeId),
    pub value: f64,
}

/// Self-pairs score 0 unless a self-loop exists; see module docs.
#[inline]
fn trivial_self_pair(g: &UnionGraph, x: NodeId, y: NodeId) -> bool {
    x == y && !g.has_edge(x, x)
}

fn intersection_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Number of nodes adjacent to both `x` and `y`.
pub fn common_neighbors(g: &UnionGraph, x: NodeId, y: NodeId) -> usize {
    if trivial_self_pair(g, x, y) {
        return 0;
    }
    intersection_count(g.neighbors(x), g.neighbors(y))
}

/// Degree product `|Γ(x)| * |Γ(y)|`.
pub fn preferential_attachment(g: &UnionGraph, x: NodeId, y: NodeId) -> usize {
    if trivial_self_pair(g, x, y) {
        return 0;
    }
    g.degree(x) * g.degree(y)
}

/// Shared fraction of the combined neighborhood, in `[0, 1]`. Two empty
/// neighborhoods give 0.
pub fn jaccard(g: &UnionGraph, x: NodeId, y: NodeId) -> f64 {
    if trivial_self_pair(g, x, y) {
        return 0.0;
    }
    let (nx, ny) = (g.neighbors(x), g.neighbors(y));
    let inter = intersection_count(nx, ny);
    let union = nx.len() + ny.len() - inter;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

/// Sum of `1 / ln(deg(z))` over common neighbors `z`; common neighbors of
/// degree <= 1 contribute nothing.
pub fn adamic_adar(g: &UnionGraph, x: NodeId, y: NodeId) -> f64 {
    if trivial_self_pair(g, x, y) {
        return 0.0;
    }
    let (a, b) = (g.neighbors(x), g.neighbors(y));
    let (mut i, mut j) = (0, 0);
    let mut sum = 0.0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let deg = g.degree(a[i]);
                if deg > 1 {
                    sum += 1.0 / (deg as f64).ln();
                }
                i += 1;
                j += 1;
            }
        }
    }
    sum
}

/// Single-pair dispatch over [`MetricKind`].
pub fn score(g: &UnionGraph, kind: MetricKind, x: NodeId, y: NodeId) -> f64 {
    match kind {
        MetricKind::CommonNeighbors => common_neighbors(g, x, y) as f64,
        MetricKind::PreferentialAttachment => preferential_attachment(g, x, y) as f64,
        MetricKind::JaccardCoefficient => jaccard(g, x, y),
        MetricKind::AdamicAdar => adamic_adar(g, x, y),
    }
}

/// All four metrics for one pair, in feature-schema order `[cn, jc, pa, aa]`.
/// Shares one intersection walk instead of four.
pub fn all_metrics(g: &UnionGraph, x: NodeId, y: NodeId) -> [f64; 4] {
    if trivial_self_pair(g, x, y) {
        return [0.0; 4];
    }
    let (a, b) = (g.neighbors(x), g.neighbors(y));
    let (mut i, mut j) = (0, 0);
    let mut inter = 0usize;
    let mut aa = 0.0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                inter += 1;
                let deg = g.degree(a[i]);
                if deg > 1 {
                    aa += 1.0 / (deg as f64).ln();
                }
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - inter;
    let jc = if union == 0 { 0.0 } else { inter as f64 / union as f64 };
    let pa = (a.len() * b.len()) as f64;
    [inter as f64, jc, pa, aa]
}

/// Score a stream of pairs, preserving input order.
pub fn score_all_pairs<'a, I>(
    g: &'a UnionGraph,
    kind: MetricKind,
    pairs: I,
) -> impl Iterator<Item = PairScore> + 'a
where
    I: IntoIterator<Item = (NodeId, NodeId)>,
    I::IntoIter: 'a,
{
    pairs.into_iter().map(move |(x, y)| PairScore {
        pair: (x, y),
        value: score(g, kind, x, y),
    })
}

/// Parallel variant of [`score_all_pairs`]; output order equals input order.
pub fn score_pairs_parallel(
    g: &UnionGraph,
    kind: MetricKind,
    pairs: &[(NodeId, NodeId)],
) -> Vec<PairScore> {
    pairs
        .par_iter()
        .map(|&(x, y)| PairScore {
            pair: (x, y),
            value: score(g, kind, x, y),
        })
        .collect()
}

/// Scores for every ordered pair (self-pairs included), row-major over
/// `(src, dst)`. This enumeration yields exactly `n^2` scores.
pub fn score_ordered_pair_grid(g: &UnionGraph, kind: MetricKind) -> Vec<f64> {
    let n = g.num_nodes() as u32;
    (0..n)
        .into_par_iter()
        .flat_map_iter(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| score(g, kind, x, y))
        .collect()
}
