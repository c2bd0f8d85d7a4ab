//! Iterative neighborhood relabeling: tokens describing the rooted subtree
//! around every node at every refinement depth.

use crate::graph::Graph;
use crate::hash::{fnv1a64, fnv1a64_words};
use crate::ids::GameId;
use serde::{Deserialize, Serialize};

/// One graph rendered as a multiset of subtree tokens, `(h+1)` tokens per
/// node. Tokens depend only on the graph structure, never on node ids, so
/// isomorphic graphs produce equal documents. The token list is kept sorted
/// as the canonical multiset representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlDocument {
    pub graph_id: GameId,
    pub tokens: Vec<String>,
}

impl WlDocument {
    /// Stable 64-bit content key of the token multiset; used to derive
    /// per-document RNG streams independent of corpus order.
    pub fn content_hash(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        for t in &self.tokens {
            h = fnv1a64_words([h, fnv1a64(t.as_bytes())]);
        }
        h
    }
}

/// Relabel for `h` refinement rounds and emit `"<round>:<label>"` tokens.
///
/// Round 0 labels are node degrees; round `i+1` labels are the FNV-1a hash
/// of the node's label followed by its sorted neighbor labels, so the label
/// values are stable across runs and platforms.
pub fn wl_document(g: &Graph, graph_id: GameId, h: usize) -> WlDocument {
    let n = g.node_count();
    let mut labels: Vec<u64> = (0..n).map(|u| g.degree(u) as u64).collect();
    let mut tokens: Vec<String> = Vec::with_capacity(n * (h + 1));
    for &label in &labels {
        tokens.push(format!("0:{label}"));
    }
    for round in 1..=h {
        let mut next = Vec::with_capacity(n);
        for u in 0..n {
            let mut neighborhood: Vec<u64> = g
                .neighbors(u)
                .iter()
                .map(|&v| labels[v as usize])
                .collect();
            neighborhood.sort_unstable();
            let label =
                fnv1a64_words(std::iter::once(labels[u]).chain(neighborhood.iter().copied()));
            tokens.push(format!("{round}:{label}"));
            next.push(label);
        }
        labels = next;
    }
    tokens.sort_unstable();
    WlDocument { graph_id, tokens }
}
