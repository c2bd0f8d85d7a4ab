//! Canonical undirected simple-graph representation.
//!
//! Nodes are opaque [`PlayerId`]s mapped to a dense internal index (ascending
//! id order) so algorithms can use array-backed state. The adjacency is kept
//! sorted and symmetric, self-loops and parallel edges are dropped at
//! construction, so two graphs built from the same edge set compare equal no
//! matter the input order.

use crate::ids::PlayerId;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge list parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("operation requires a non-empty graph")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Counts of records dropped while enforcing the simple-graph invariants.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTally {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Undirected simple graph over [`PlayerId`] nodes.
#[derive(Debug, Clone)]
pub struct Graph {
    /// Node ids, ascending; position is the dense internal index.
    ids: Vec<PlayerId>,
    index: HashMap<PlayerId, u32>,
    /// Sorted neighbor indices per node; symmetric, no self-loops.
    adj: Vec<Vec<u32>>,
    n_edges: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Build from an edge list alone; nodes are the endpoints that appear.
    pub fn from_edge_list<I>(pairs: I) -> (Graph, EdgeTally)
    where
        I: IntoIterator<Item = (PlayerId, PlayerId)>,
    {
        Self::from_parts(std::iter::empty(), pairs)
    }

    /// [`Graph::from_edge_list`] without the tally.
    pub fn from_edges<I>(pairs: I) -> Graph
    where
        I: IntoIterator<Item = (PlayerId, PlayerId)>,
    {
        Self::from_edge_list(pairs).0
    }

    /// Build from an explicit node set plus an edge list. Endpoints absent
    /// from `nodes` are added; nodes without edges stay as isolated nodes.
    pub fn from_parts<N, I>(nodes: N, pairs: I) -> (Graph, EdgeTally)
    where
        N: IntoIterator<Item = PlayerId>,
        I: IntoIterator<Item = (PlayerId, PlayerId)>,
    {
        let mut tally = EdgeTally::default();
        let mut node_set: BTreeSet<PlayerId> = nodes.into_iter().collect();
        let mut raw_edges: Vec<(PlayerId, PlayerId)> = Vec::new();
        for (a, b) in pairs {
            node_set.insert(a);
            node_set.insert(b);
            if a == b {
                tally.self_loops += 1;
                continue;
            }
            raw_edges.push(if a <= b { (a, b) } else { (b, a) });
        }

        let ids: Vec<PlayerId> = node_set.into_iter().collect();
        let index: HashMap<PlayerId, u32> = ids
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i as u32))
            .collect();

        let mut edges: Vec<(u32, u32)> = raw_edges
            .into_iter()
            .map(|(a, b)| (index[&a], index[&b]))
            .collect();
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        tally.duplicates = before - edges.len();

        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        (
            Graph {
                ids,
                index,
                adj,
                n_edges: edges.len(),
            },
            tally,
        )
    }

    /// Parse a tab-separated edge-list file: one `u<TAB>v` pair per line,
    /// `#`-prefixed comment lines and blank lines ignored.
    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<(Graph, EdgeTally), GraphError> {
        let file = std::fs::File::open(path)?;
        let mut pairs = Vec::new();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse = |s: &str| -> Result<PlayerId, GraphError> {
                s.parse().map_err(|_| GraphError::Parse {
                    line: lineno + 1,
                    message: format!("invalid player id {s:?}"),
                })
            };
            let (a, b) = line.split_once('\t').ok_or_else(|| GraphError::Parse {
                line: lineno + 1,
                message: "expected two ids separated by a tab".into(),
            })?;
            if b.contains('\t') {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    message: "expected exactly two fields".into(),
                });
            }
            pairs.push((parse(a)?, parse(b)?));
        }
        Ok(Self::from_edge_list(pairs))
    }

    /// Write the canonical edge list (ascending `u < v` pairs). Isolated
    /// nodes are not representable in this format.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (a, b) in self.edges() {
            writeln!(w, "{a}\t{b}")?;
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Node ids in ascending order; position is the internal index.
    pub fn nodes(&self) -> &[PlayerId] {
        &self.ids
    }

    pub fn contains(&self, id: PlayerId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn id_of(&self, idx: usize) -> PlayerId {
        self.ids[idx]
    }

    pub fn index_of(&self, id: PlayerId) -> Option<usize> {
        self.index.get(&id).map(|&i| i as usize)
    }

    /// Sorted neighbor indices of the node at internal index `idx`.
    pub fn neighbors(&self, idx: usize) -> &[u32] {
        &self.adj[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: PlayerId, b: PlayerId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.adj[u].binary_search(&(v as u32)).is_ok(),
            _ => false,
        }
    }

    /// Edges as id pairs, each once, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (PlayerId, PlayerId)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (self.ids[u], self.ids[v as usize]))
        })
    }

    /// Induced subgraph on `keep ∩ nodes(self)`. Ids in `keep` that are not
    /// in the graph are ignored; retained nodes with no surviving edge stay
    /// as isolated nodes.
    pub fn induced_subgraph(&self, keep: &HashSet<PlayerId>) -> Graph {
        let nodes: Vec<PlayerId> = self
            .ids
            .iter()
            .copied()
            .filter(|id| keep.contains(id))
            .collect();
        let retained: HashSet<PlayerId> = nodes.iter().copied().collect();
        let edges = self
            .edges()
            .filter(|(a, b)| retained.contains(a) && retained.contains(b));
        Graph::from_parts(nodes, edges).0
    }

    /// Breadth-first component partition, ordered by smallest contained id.
    pub fn connected_components(&self) -> ComponentPartition {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start as u32);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(self.ids[u as usize]);
                for &v in &self.adj[u as usize] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        // Components are discovered in ascending order of their smallest
        // node index, which equals ascending smallest id. The first maximal
        // component therefore wins size ties by smallest contained id.
        let lcc_index = components
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        ComponentPartition {
            components,
            lcc_index,
        }
    }

    /// Induced subgraph on the largest connected component.
    pub fn largest_connected_component(&self) -> Result<Graph, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let parts = self.connected_components();
        let keep: HashSet<PlayerId> = parts.lcc().iter().copied().collect();
        Ok(self.induced_subgraph(&keep))
    }
}

/// Disjoint node sets covering the graph, with the largest marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Sorted node sets, ordered by smallest contained id.
    pub components: Vec<Vec<PlayerId>>,
    /// Index of a maximum-cardinality set (ties: smallest contained id).
    pub lcc_index: usize,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn lcc(&self) -> &[PlayerId] {
        &self.components[self.lcc_index]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}
