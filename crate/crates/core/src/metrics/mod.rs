//! Structural features of a single graph: density, degree statistics,
//! assortativity, Freeman centralizations, clustering, components,
//! modularity, and a power-law fit of the degree distribution.
//!
//! Quantities that are undefined for a given graph (assortativity of a
//! regular graph, centralization of a 2-node graph, ...) are `None` and
//! serialize as `null` — never as `0`.

mod betweenness;
mod modularity;
mod powerlaw;

pub use betweenness::betweenness;
pub use modularity::{component_labels, modularity_score, partition_modularity};
pub use powerlaw::{powerlaw_fit, PowerLawConfig, PowerLawFit, PowerLawVerdict};

use crate::graph::Graph;
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// Profile of one graph; fields mirror the per-game report row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructuralProfile<T> {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub density: Option<T>,
    pub mean_degree: T,
    pub std_degree: T,
    pub assortativity: Option<T>,
    pub degree_centralization: Option<T>,
    pub betweenness_centralization: Option<T>,
    pub avg_clustering: T,
    pub n_components: usize,
    pub lcc_fraction: T,
    pub modularity: Option<T>,
    pub powerlaw: PowerLawFit<T>,
}

/// Knobs for the randomized parts of a profile (community detection order,
/// power-law bootstrap).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricsConfig {
    pub seed: u64,
    pub bootstrap_replicates: usize,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            seed: 42,
            bootstrap_replicates: 100,
        }
    }
}

/// Fraction of connected node pairs: `|E| / C(|V|, 2)`. `None` for fewer
/// than two nodes.
pub fn density<T: Real>(g: &Graph) -> Option<T> {
    let n = g.node_count();
    if n < 2 {
        return None;
    }
    let pairs = T::of(n) * T::of(n - 1) / T::lit(2.0);
    Some(T::of(g.edge_count()) / pairs)
}

/// Mean and population standard deviation of the degree sequence.
/// `(0, 0)` for the empty graph.
pub fn degree_stats<T: Real>(g: &Graph) -> (T, T) {
    let n = g.node_count();
    if n == 0 {
        return (T::zero(), T::zero());
    }
    let mean = T::lit(2.0) * T::of(g.edge_count()) / T::of(n);
    let var = g
        .degrees()
        .iter()
        .map(|&d| {
            let diff = T::of(d) - mean;
            diff * diff
        })
        .sum::<T>()
        / T::of(n);
    (mean, var.sqrt())
}

/// Degree assortativity: Pearson correlation of endpoint degrees over the
/// multiset of directed edge stubs (each undirected edge counted in both
/// orientations). `None` when there are no edges or the stub degrees have
/// zero variance (regular graphs).
pub fn assortativity<T: Real>(g: &Graph) -> Option<T> {
    let m2 = 2 * g.edge_count();
    if m2 == 0 {
        return None;
    }
    let degrees = g.degrees();
    let mut sum_x = T::zero();
    let mut sum_xx = T::zero();
    let mut sum_xy = T::zero();
    for u in 0..g.node_count() {
        let du = T::of(degrees[u]);
        for &v in g.neighbors(u) {
            let dv = T::of(degrees[v as usize]);
            sum_x += du;
            sum_xx += du * du;
            sum_xy += du * dv;
        }
    }
    // By symmetry of the stub multiset the x and y marginals coincide.
    let m2 = T::of(m2);
    let mean = sum_x / m2;
    let var = sum_xx / m2 - mean * mean;
    let cov = sum_xy / m2 - mean * mean;
    if var <= T::zero() {
        return None;
    }
    Some(cov / var)
}

/// Freeman degree centralization: `Σ_v (d_max − d_v) / ((n−1)(n−2))`.
/// 1 on stars, 0 on cycles. `None` for fewer than three nodes.
pub fn degree_centralization<T: Real>(g: &Graph) -> Option<T> {
    let n = g.node_count();
    if n < 3 {
        return None;
    }
    let degrees = g.degrees();
    let d_max = *degrees.iter().max().expect("non-empty");
    let spread: usize = degrees.iter().map(|&d| d_max - d).sum();
    Some(T::of(spread) / (T::of(n - 1) * T::of(n - 2)))
}

/// Freeman betweenness centralization over normalized betweenness:
/// `Σ_v (b_max − b_v) / (n−1)`, which is 1 on stars. `None` for fewer than
/// three nodes.
pub fn betweenness_centralization<T: Real>(g: &Graph) -> Option<T> {
    let n = g.node_count();
    if n < 3 {
        return None;
    }
    let b = betweenness::<T>(g);
    let b_max = b.iter().copied().fold(T::zero(), T::max);
    let spread = b.iter().map(|&x| b_max - x).sum::<T>();
    Some(spread / T::of(n - 1))
}

/// Number of triangles each node participates in.
fn triangle_counts(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut counts = vec![0usize; n];
    for u in 0..n {
        let nu = g.neighbors(u);
        for (i, &v) in nu.iter().enumerate() {
            if (v as usize) <= u {
                continue;
            }
            for &w in &nu[i + 1..] {
                // u < v < w by sortedness; check the closing edge v-w.
                if g.neighbors(v as usize).binary_search(&w).is_ok() {
                    counts[u] += 1;
                    counts[v as usize] += 1;
                    counts[w as usize] += 1;
                }
            }
        }
    }
    counts
}

/// Average local clustering coefficient. Nodes of degree < 2 contribute 0
/// and are included in the average.
pub fn avg_clustering<T: Real>(g: &Graph) -> T {
    let n = g.node_count();
    if n == 0 {
        return T::zero();
    }
    let triangles = triangle_counts(g);
    let total: T = (0..n)
        .map(|u| {
            let d = g.degree(u);
            if d < 2 {
                T::zero()
            } else {
                let possible = T::of(d) * T::of(d - 1) / T::lit(2.0);
                T::of(triangles[u]) / possible
            }
        })
        .sum();
    total / T::of(n)
}

/// Assemble the full [`StructuralProfile`].
pub fn profile<T: Real>(g: &Graph, cfg: &MetricsConfig) -> StructuralProfile<T> {
    let n = g.node_count();
    let (mean_degree, std_degree) = degree_stats(g);
    let parts = g.connected_components();
    let lcc_fraction = if n == 0 {
        T::zero()
    } else {
        T::of(parts.lcc().len()) / T::of(n)
    };
    let plcfg = PowerLawConfig {
        replicates: cfg.bootstrap_replicates,
        seed: cfg.seed,
    };
    StructuralProfile {
        n_nodes: n,
        n_edges: g.edge_count(),
        density: density(g),
        mean_degree,
        std_degree,
        assortativity: assortativity(g),
        degree_centralization: degree_centralization(g),
        betweenness_centralization: betweenness_centralization(g),
        avg_clustering: avg_clustering(g),
        n_components: parts.len(),
        lcc_fraction,
        modularity: modularity_score::<T>(g).map(|(_, q)| q),
        powerlaw: powerlaw_fit(&g.degrees(), &plcfg),
    }
}
