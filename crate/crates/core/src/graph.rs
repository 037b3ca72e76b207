//! Simple undirected graphs, edge-list ingestion and sampled subgraphs.
//!
//! A [`Graph`] is immutable once built. Nodes are addressed by contiguous
//! indices in `0..n`; the external identifiers read from an edge list are
//! kept as labels so samples can be written back in the original namespace.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::samplers::Technique;

/// Counters describing what ingestion discarded while normalizing input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub lines_read: usize,
    pub comment_lines: usize,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

#[derive(Debug, Clone)]
pub struct IngestOptions {
    /// Lines starting with this character are ignored.
    pub comment_prefix: char,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self { comment_prefix: '#' }
    }
}

/// Immutable simple undirected graph in compressed adjacency form.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
    ingest: IngestStats,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `0..n`. Direction is collapsed,
    /// self-loops and duplicates are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_labeled_edges(labels, edges)
    }

    /// Like [`Graph::from_edges`] but with caller-supplied node labels.
    pub fn from_labeled_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut stats = IngestStats::default();
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange {
                        index: x,
                        node_count: n,
                    });
                }
            }
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let before = normalized.len();
        normalized.sort_unstable();
        normalized.dedup();
        stats.duplicates_dropped = before - normalized.len();
        let mut graph = Self::from_canonical(labels, normalized);
        graph.ingest = stats;
        Ok(graph)
    }

    /// `edges` must be sorted, deduplicated, loop-free and have `u < v`.
    pub(crate) fn from_canonical(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * edges.len()];
        // Sorted (u, v) order fills every list in increasing order: for node x,
        // all (u, x) with u < x precede all (x, w).
        for &(u, v) in &edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        debug_assert!((0..n).all(|i| targets[offsets[i]..offsets[i + 1]].windows(2).all(|w| w[0] < w[1])));
        Self {
            offsets,
            targets,
            edges,
            labels,
            ingest: IngestStats::default(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbors of `node`.
    #[inline]
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    #[inline]
    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && v < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ingest_stats(&self) -> IngestStats {
        self.ingest
    }

    /// Writes the graph as a whitespace-separated edge list using node labels.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# nodes: {} edges: {}", self.node_count(), self.edge_count())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{}\t{}", self.labels[u], self.labels[v])?;
        }
        out.flush()
    }
}

/// Reads a SNAP-style edge list from `path`.
pub fn load_edge_list(path: impl AsRef<Path>, options: &IngestOptions) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(BufReader::new(file), options).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn parse_edge_list<R: BufRead>(reader: R, options: &IngestOptions) -> Result<Graph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut raw = Vec::new();
    let mut lines_read = 0;
    let mut comment_lines = 0;

    let mut intern = |token: &str| -> usize {
        if let Some(&i) = index.get(token) {
            return i;
        }
        let i = labels.len();
        labels.push(token.to_owned());
        index.insert(token.to_owned(), i);
        i
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        lines_read += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with(options.comment_prefix) {
            comment_lines += 1;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => {
                let u = intern(a);
                let v = intern(b);
                raw.push((u, v));
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    found: line,
                })
            }
        }
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut graph = Graph::from_labeled_edges(labels, raw)?;
    graph.ingest.lines_read = lines_read;
    graph.ingest.comment_lines = comment_lines;
    Ok(graph)
}

/// Writes `graph` to `path` as an edge list.
pub fn save_edge_list(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    graph
        .write_edge_list(BufWriter::new(file))
        .map_err(|e| Error::io(path, e))
}

/// A subgraph `G' = (V', E')` of a parent graph together with how it was drawn.
#[derive(Debug, Clone)]
pub struct Sample<'g> {
    parent: &'g Graph,
    nodes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    pub technique: Option<Technique>,
    pub seed: Option<u64>,
    /// Share of candidate induced links kept; `None` for techniques without induction.
    pub induction_fraction: Option<f64>,
    /// Set when degree-proportional selection ran out of positive weight and
    /// continued uniformly.
    pub uniform_fallback: bool,
}

impl<'g> Sample<'g> {
    /// `nodes` and `edges` are canonicalized (sorted, deduplicated, `u < v`).
    /// Edge endpoints must be members of `nodes`; this is checked in debug builds.
    pub(crate) fn new(parent: &'g Graph, mut nodes: Vec<usize>, mut edges: Vec<(usize, usize)>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| nodes.binary_search(&u).is_ok() && nodes.binary_search(&v).is_ok()));
        Self {
            parent,
            nodes,
            edges,
            technique: None,
            seed: None,
            induction_fraction: None,
            uniform_fallback: false,
        }
    }

    pub fn parent(&self) -> &'g Graph {
        self.parent
    }

    /// Sampled parent node indices, sorted.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Sampled parent edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Materializes the sample as a standalone graph. Node `i` of the result
    /// is `self.nodes()[i]` in the parent and keeps its label.
    pub fn to_graph(&self) -> Graph {
        let labels = self.nodes.iter().map(|&u| self.parent.label(u).to_owned()).collect();
        let local = |u: usize| self.nodes.binary_search(&u).expect("edge endpoint outside sample");
        let edges = self.edges.iter().map(|&(u, v)| (local(u), local(v))).collect();
        Graph::from_canonical(labels, edges)
    }
}

/// Anything whose structure can be measured as a [`Graph`].
pub trait Network {
    fn as_graph(&self) -> Cow<'_, Graph>;
}

impl Network for Graph {
    fn as_graph(&self) -> Cow<'_, Graph> {
        Cow::Borrowed(self)
    }
}

impl Network for Sample<'_> {
    fn as_graph(&self) -> Cow<'_, Graph> {
        Cow::Owned(self.to_graph())
    }
}

/// Membership mask over the nodes of `g`.
pub(crate) fn node_mask(g: &Graph, nodes: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; g.node_count()];
    for &u in nodes {
        mask[u] = true;
    }
    mask
}

/// All parent edges with both endpoints in `mask`, sorted with `u < v`.
pub(crate) fn mutual_edges(g: &Graph, nodes: &[usize], mask: &[bool]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for &u in nodes {
        for &v in g.neighbors(u) {
            if v > u && mask[v] {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// The subgraph induced by `nodes`: the nodes plus every mutual edge of `g`.
pub fn induced_subgraph<'g>(g: &'g Graph, nodes: &[usize]) -> Result<Sample<'g>> {
    if let Some(&bad) = nodes.iter().find(|&&u| u >= g.node_count()) {
        return Err(Error::NodeOutOfRange {
            index: bad,
            node_count: g.node_count(),
        });
    }
    let mask = node_mask(g, nodes);
    let mut members: Vec<usize> = nodes.to_vec();
    members.sort_unstable();
    members.dedup();
    let edges = mutual_edges(g, &members, &mask);
    Ok(Sample::new(g, members, edges))
}
