//! Timestamped networks, snapshot slicing, frame construction and churn
//! statistics.
//!
//! A [`TemporalNetwork`] is an ordered sequence of [`Snapshot`]s over a shared
//! node universe. Consecutive snapshots are grouped into [`Frame`]s of a fixed
//! window length; each frame collapses its member snapshots into a single
//! union graph on which similarity metrics and labels are computed.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

/// Dense node index, contiguous `0..num_nodes` within one network.
/// External string labels are kept in a side table on [`TemporalNetwork`].
pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Directedness {
    Directed,
    Undirected,
}

/// Which edges count as "neighbors of x" on a directed graph.
///
/// Undirected graphs ignore this; for directed ones the default treats a node's
/// neighborhood as the union of its in- and out-neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborMode {
    #[default]
    InOut,
    OutOnly,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("empty input: no edge records found")]
    EmptyInput,
    #[error("malformed record at line {line}: {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("snapshot index must be >= 1 at line {line} (got {index})")]
    BadSnapshotIndex { line: usize, index: i64 },
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("need at least 2 snapshots, network has {0}")]
    NotEnoughSnapshots(usize),
    #[error("framing needs {needed} snapshots ({frames} frames x window {window}), network has {available}")]
    FramingExceedsSnapshots {
        frames: usize,
        window: usize,
        needed: usize,
        available: usize,
    },
    #[error("window and frame count must both be >= 1")]
    EmptyFraming,
    #[error("node {0} out of range for {1} nodes")]
    NodeOutOfRange(NodeId, usize),
    #[error("target frame index {target} out of range 2..={frames}")]
    BadTargetFrame { target: usize, frames: usize },
}

/// Edge set of a network at one discrete time index (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    index: u32,
    edges: Vec<(NodeId, NodeId)>,
}

impl Snapshot {
    fn new(index: u32, edges: Vec<(NodeId, NodeId)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]), "edges sorted+dedup");
        Snapshot { index, edges }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Edges sorted ascending, deduplicated. Undirected edges are stored with
    /// the smaller endpoint first.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Ordered sequence of snapshots over a fixed node universe.
#[derive(Debug, Clone)]
pub struct TemporalNetwork {
    num_nodes: usize,
    labels: Vec<String>,
    snapshots: Vec<Snapshot>,
    directedness: Directedness,
    neighbor_mode: NeighborMode,
}

fn canonical(directedness: Directedness, src: NodeId, dst: NodeId) -> (NodeId, NodeId) {
    match directedness {
        Directedness::Directed => (src, dst),
        Directedness::Undirected => (src.min(dst), src.max(dst)),
    }
}

impl TemporalNetwork {
    /// Build a network from per-snapshot edge lists. Snapshot `k` of the input
    /// becomes time index `k+1`. Edges are canonicalized (undirected: smaller
    /// endpoint first) and deduplicated.
    pub fn from_edges(
        num_nodes: usize,
        directedness: Directedness,
        snapshot_edges: Vec<Vec<(NodeId, NodeId)>>,
    ) -> Result<Self, GraphError> {
        let mut snapshots = Vec::with_capacity(snapshot_edges.len());
        for (k, edges) in snapshot_edges.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for (s, d) in edges {
                if s as usize >= num_nodes {
                    return Err(GraphError::NodeOutOfRange(s, num_nodes));
                }
                if d as usize >= num_nodes {
                    return Err(GraphError::NodeOutOfRange(d, num_nodes));
                }
                set.insert(canonical(directedness, s, d));
            }
            snapshots.push(Snapshot::new(k as u32 + 1, set.into_iter().collect()));
        }
        let labels = (0..num_nodes).map(|i| i.to_string()).collect();
        Ok(TemporalNetwork {
            num_nodes,
            labels,
            snapshots,
            directedness,
            neighbor_mode: NeighborMode::default(),
        })
    }

    pub fn with_neighbor_mode(mut self, mode: NeighborMode) -> Self {
        self.neighbor_mode = mode;
        self
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_snapshots(&self) -> usize {
        self.snapshots.len()
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn neighbor_mode(&self) -> NeighborMode {
        self.neighbor_mode
    }

    pub fn node_label(&self, id: NodeId) -> &str {
        &self.labels[id as usize]
    }

    pub fn node_labels(&self) -> &[String] {
        &self.labels
    }

    /// Serialize back to the plain edge-list text format (`src dst snapshot`).
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        for snap in &self.snapshots {
            for &(s, d) in snap.edges() {
                writeln!(
                    w,
                    "{} {} {}",
                    self.labels[s as usize], self.labels[d as usize], snap.index
                )?;
            }
        }
        Ok(())
    }
}

/// Load a plain-text edge list: one `src dst snapshot` record per line,
/// whitespace-separated, `#` comment lines ignored. A fourth numeric field is
/// treated as an edge weight and ignored with a warning.
pub fn load_edge_list(
    path: impl AsRef<Path>,
    directedness: Directedness,
) -> Result<TemporalNetwork, LoadError> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file), directedness)
}

/// Parse the edge-list format from any reader. See [`load_edge_list`].
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    directedness: Directedness,
) -> Result<TemporalNetwork, LoadError> {
    let mut label_ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut records: Vec<(NodeId, NodeId, u32)> = Vec::new();
    let mut weighted_lines = 0usize;
    let mut max_snapshot = 0u32;

    let mut intern = |label: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = label_ids.get(label) {
            return id;
        }
        let id = labels.len() as NodeId;
        labels.push(label.to_string());
        label_ids.insert(label.to_string(), id);
        id
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(LoadError::MalformedLine {
                line: lineno,
                content: trimmed.to_string(),
            });
        }
        let t: i64 = fields[2].parse().map_err(|_| LoadError::MalformedLine {
            line: lineno,
            content: trimmed.to_string(),
        })?;
        if t < 1 {
            return Err(LoadError::BadSnapshotIndex {
                line: lineno,
                index: t,
            });
        }
        if fields.len() == 4 {
            if fields[3].parse::<f64>().is_err() {
                return Err(LoadError::MalformedLine {
                    line: lineno,
                    content: trimmed.to_string(),
                });
            }
            weighted_lines += 1;
        }
        let src = intern(fields[0], &mut labels);
        let dst = intern(fields[1], &mut labels);
        let t = t as u32;
        max_snapshot = max_snapshot.max(t);
        records.push((src, dst, t));
    }

    if records.is_empty() {
        return Err(LoadError::EmptyInput);
    }
    if weighted_lines > 0 {
        log::warn!("{weighted_lines} record(s) carry an edge weight; weights are ignored");
    }

    // Materialize snapshots 1..=max; indices absent from the file become
    // empty snapshots.
    let mut per_snapshot: Vec<BTreeSet<(NodeId, NodeId)>> =
        vec![BTreeSet::new(); max_snapshot as usize];
    for (src, dst, t) in records {
        per_snapshot[(t - 1) as usize].insert(canonical(directedness, src, dst));
    }
    let snapshots = per_snapshot
        .into_iter()
        .enumerate()
        .map(|(k, set)| Snapshot::new(k as u32 + 1, set.into_iter().collect()))
        .collect();

    Ok(TemporalNetwork {
        num_nodes: labels.len(),
        labels,
        snapshots,
        directedness,
        neighbor_mode: NeighborMode::default(),
    })
}

/// Union of the edge sets of one or more snapshots, with adjacency prepared
/// for neighborhood queries.
#[derive(Debug, Clone)]
pub struct UnionGraph {
    num_nodes: usize,
    directedness: Directedness,
    mode: NeighborMode,
    edges: Vec<(NodeId, NodeId)>,
    /// Out-neighbors for directed graphs, full adjacency for undirected.
    adj_out: Vec<Vec<NodeId>>,
    /// In ∪ out neighbors; only populated for directed graphs.
    adj_all: Vec<Vec<NodeId>>,
}

impl UnionGraph {
    pub fn from_edges(
        num_nodes: usize,
        directedness: Directedness,
        mode: NeighborMode,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Self {
        let edge_set: BTreeSet<(NodeId, NodeId)> = edges
            .into_iter()
            .map(|(s, d)| canonical(directedness, s, d))
            .collect();
        let edges: Vec<(NodeId, NodeId)> = edge_set.into_iter().collect();

        let mut adj_out: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); num_nodes];
        let mut adj_all: Vec<BTreeSet<NodeId>> = match directedness {
            Directedness::Directed => vec![BTreeSet::new(); num_nodes],
            Directedness::Undirected => Vec::new(),
        };
        for &(s, d) in &edges {
            match directedness {
                Directedness::Directed => {
                    adj_out[s as usize].insert(d);
                    adj_all[s as usize].insert(d);
                    adj_all[d as usize].insert(s);
                }
                Directedness::Undirected => {
                    adj_out[s as usize].insert(d);
                    adj_out[d as usize].insert(s);
                }
            }
        }
        let collect = |v: Vec<BTreeSet<NodeId>>| -> Vec<Vec<NodeId>> {
            v.into_iter().map(|s| s.into_iter().collect()).collect()
        };
        UnionGraph {
            num_nodes,
            directedness,
            mode,
            edges,
            adj_out: collect(adj_out),
            adj_all: collect(adj_all),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn neighbor_mode(&self) -> NeighborMode {
        self.mode
    }

    /// Edges sorted ascending (canonical orientation for undirected graphs).
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbor set of `x`, sorted. For directed graphs this honors the
    /// configured [`NeighborMode`].
    pub fn neighbors(&self, x: NodeId) -> &[NodeId] {
        match (self.directedness, self.mode) {
            (Directedness::Undirected, _) | (Directedness::Directed, NeighborMode::OutOnly) => {
                &self.adj_out[x as usize]
            }
            (Directedness::Directed, NeighborMode::InOut) => &self.adj_all[x as usize],
        }
    }

    /// Out-neighbors for directed graphs; the full adjacency for undirected
    /// ones. This is the edge-orientation view used for labeling, independent
    /// of the [`NeighborMode`].
    pub fn out_neighbors(&self, x: NodeId) -> &[NodeId] {
        &self.adj_out[x as usize]
    }

    pub fn degree(&self, x: NodeId) -> usize {
        self.neighbors(x).len()
    }

    /// Edge presence. Directed graphs check `x -> y`; undirected graphs are
    /// symmetric in the arguments.
    pub fn has_edge(&self, x: NodeId, y: NodeId) -> bool {
        let (x, y) = canonical(self.directedness, x, y);
        self.edges.binary_search(&(x, y)).is_ok()
    }
}

/// `window` consecutive snapshots collapsed into one union graph.
#[derive(Debug, Clone)]
pub struct Frame {
    span: (u32, u32),
    union: UnionGraph,
}

impl Frame {
    /// Inclusive snapshot index range covered by this frame.
    pub fn span(&self) -> (u32, u32) {
        self.span
    }

    pub fn graph(&self) -> &UnionGraph {
        &self.union
    }
}

/// Disjoint, consecutive frames covering snapshots `1..=count*window`.
#[derive(Debug, Clone)]
pub struct FramedSeries {
    frames: Vec<Frame>,
    window: usize,
}

impl FramedSeries {
    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Split into (history, target) around a 1-based target frame index.
    /// History is every frame strictly before the target.
    pub fn history_and_target(&self, target: usize) -> Result<(&[Frame], &Frame), GraphError> {
        if target < 2 || target > self.frames.len() {
            return Err(GraphError::BadTargetFrame {
                target,
                frames: self.frames.len(),
            });
        }
        Ok((&self.frames[..target - 1], &self.frames[target - 1]))
    }
}

/// Group the first `count * window` snapshots into `count` frames of `window`
/// consecutive snapshots each; frame `i` (1-based) spans snapshots
/// `(i-1)*window+1 ..= i*window`. Trailing snapshots beyond the covered range
/// are dropped with a warning.
pub fn build_frames(
    net: &TemporalNetwork,
    window: usize,
    count: usize,
) -> Result<FramedSeries, GraphError> {
    if window < 1 || count < 1 {
        return Err(GraphError::EmptyFraming);
    }
    let needed = window * count;
    let available = net.num_snapshots();
    if needed > available {
        return Err(GraphError::FramingExceedsSnapshots {
            frames: count,
            window,
            needed,
            available,
        });
    }
    if needed < available {
        log::warn!(
            "framing covers snapshots 1..={needed}; dropping {} trailing snapshot(s)",
            available - needed
        );
    }

    let mut frames = Vec::with_capacity(count);
    for i in 0..count {
        let lo = i * window;
        let hi = lo + window;
        let members = &net.snapshots()[lo..hi];
        let union = UnionGraph::from_edges(
            net.num_nodes(),
            net.directedness(),
            net.neighbor_mode(),
            members.iter().flat_map(|s| s.edges().iter().copied()),
        );
        frames.push(Frame {
            span: (lo as u32 + 1, hi as u32),
            union,
        });
    }
    Ok(FramedSeries { frames, window })
}

/// Per-snapshot edge churn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SnapshotChurn {
    /// 1-based snapshot index.
    pub index: u32,
    /// Edges present now but absent from the previous snapshot.
    pub added: usize,
    /// Edges present previously but gone now.
    pub dropped: usize,
}

/// Edge churn between consecutive snapshots. The first record reports the
/// initial snapshot as all-added.
pub fn snapshot_dynamics(net: &TemporalNetwork) -> Result<Vec<SnapshotChurn>, GraphError> {
    let snaps = net.snapshots();
    if snaps.len() < 2 {
        return Err(GraphError::NotEnoughSnapshots(snaps.len()));
    }
    let mut out = Vec::with_capacity(snaps.len());
    out.push(SnapshotChurn {
        index: 1,
        added: snaps[0].edge_count(),
        dropped: 0,
    });
    for pair in snaps.windows(2) {
        let (prev, cur) = (&pair[0], &pair[1]);
        let added = sorted_difference_count(cur.edges(), prev.edges());
        let dropped = sorted_difference_count(prev.edges(), cur.edges());
        out.push(SnapshotChurn {
            index: cur.index(),
            added,
            dropped,
        });
    }
    Ok(out)
}

/// |a \ b| for sorted, deduplicated slices.
pub(crate) fn sorted_difference_count(a: &[(NodeId, NodeId)], b: &[(NodeId, NodeId)]) -> usize {
    let mut count = 0;
    let mut j = 0;
    for &e in a {
        while j < b.len() && b[j] < e {
            j += 1;
        }
        if j >= b.len() || b[j] != e {
            count += 1;
        }
    }
    count
}
