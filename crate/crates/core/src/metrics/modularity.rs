//! Community detection by greedy modularity maximization (local moving with
//! aggregation, resolution 1) and the modularity score of a partition.
//!
//! The local-moving pass visits nodes in an order keyed on iterated
//! neighborhood labels rather than on node ids, so the found partition is a
//! function of graph structure alone: deterministic across runs and stable
//! under node relabeling.

use crate::graph::Graph;
use crate::hash::fnv1a64_words;
use crate::scalar::Real;

/// Modularity `Q = Σ_c [e_c/m − (Σ_{v∈c} d_v / 2m)²]` of a node partition
/// given as one community label per internal node index. `None` when the
/// graph has no edges.
pub fn partition_modularity<T: Real>(g: &Graph, labels: &[usize]) -> Option<T> {
    let m = g.edge_count();
    if m == 0 {
        return None;
    }
    assert_eq!(labels.len(), g.node_count(), "one label per node");
    let k = labels.iter().max().map_or(0, |&c| c + 1);
    let mut intra = vec![0usize; k];
    let mut degree_sum = vec![0usize; k];
    for u in 0..g.node_count() {
        degree_sum[labels[u]] += g.degree(u);
        for &v in g.neighbors(u) {
            if (u as u32) < v && labels[u] == labels[v as usize] {
                intra[labels[u]] += 1;
            }
        }
    }
    let m_t = T::of(m);
    let two_m = T::lit(2.0) * m_t;
    let q = (0..k)
        .map(|c| {
            let frac = T::of(degree_sum[c]) / two_m;
            T::of(intra[c]) / m_t - frac * frac
        })
        .sum();
    Some(q)
}

/// Community labels induced by the connected components.
pub fn component_labels(g: &Graph) -> Vec<usize> {
    let parts = g.connected_components();
    let mut labels = vec![0usize; g.node_count()];
    for (c, comp) in parts.components.iter().enumerate() {
        for &id in comp {
            labels[g.index_of(id).expect("component node in graph")] = c;
        }
    }
    labels
}

/// Weighted working graph for the aggregation levels.
struct Level<T> {
    adj: Vec<Vec<(u32, T)>>,
    /// Self-loop weight per node (intra-community weight folded by
    /// aggregation); contributes 2w to the node degree.
    loops: Vec<T>,
    degree: Vec<T>,
    two_m: T,
}

impl<T: Real> Level<T> {
    fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let adj: Vec<Vec<(u32, T)>> = (0..n)
            .map(|u| g.neighbors(u).iter().map(|&v| (v, T::one())).collect())
            .collect();
        let degree: Vec<T> = (0..n).map(|u| T::of(g.degree(u))).collect();
        let two_m = T::lit(2.0) * T::of(g.edge_count());
        Level {
            adj,
            loops: vec![T::zero(); n],
            degree,
            two_m,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }
}

/// Structural visit order: three rounds of neighborhood label refinement,
/// ties falling back to index order.
fn wl_order(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut labels: Vec<u64> = (0..n).map(|u| g.degree(u) as u64).collect();
    for _ in 0..3 {
        let mut next = Vec::with_capacity(n);
        for u in 0..n {
            let mut around: Vec<u64> = g
                .neighbors(u)
                .iter()
                .map(|&v| labels[v as usize])
                .collect();
            around.sort_unstable();
            next.push(fnv1a64_words(
                std::iter::once(labels[u]).chain(around),
            ));
        }
        labels = next;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (labels[u], u));
    order
}

/// One round of local moving. Returns the community per node and whether any
/// node moved.
fn local_moving<T: Real>(level: &Level<T>, order: &[usize]) -> (Vec<usize>, bool) {
    let n = level.len();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<T> = level.degree.clone();

    let mut weight_to: Vec<T> = vec![T::zero(); n];
    let mut touched: Vec<usize> = Vec::new();
    let mut any_move = false;

    loop {
        let mut moved_in_pass = false;
        for &u in order {
            let c_old = comm[u];
            for &(v, w) in &level.adj[u] {
                let c = comm[v as usize];
                if weight_to[c] == T::zero() && !touched.contains(&c) {
                    touched.push(c);
                }
                weight_to[c] += w;
            }
            // Evaluate gains with u removed from its community.
            tot[c_old] -= level.degree[u];
            let ku = level.degree[u];
            let gain_of = |tot_c: T, w_uc: T| w_uc - tot_c * ku / level.two_m;
            let mut best_c = c_old;
            let mut best_gain = gain_of(tot[c_old], weight_to[c_old]);
            for &c in &touched {
                if c == c_old {
                    continue;
                }
                let gain = gain_of(tot[c], weight_to[c]);
                if gain > best_gain || (gain == best_gain && c < best_c) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            tot[best_c] += level.degree[u];
            if best_c != c_old {
                comm[u] = best_c;
                moved_in_pass = true;
                any_move = true;
            }
            for &c in &touched {
                weight_to[c] = T::zero();
            }
            touched.clear();
        }
        if !moved_in_pass {
            break;
        }
    }
    (comm, any_move)
}

/// Collapse communities into single nodes, folding intra-community weight
/// into self-loops.
fn aggregate<T: Real>(level: &Level<T>, comm: &[usize], n_comms: usize) -> Level<T> {
    let mut loops = vec![T::zero(); n_comms];
    let mut maps: Vec<std::collections::BTreeMap<u32, T>> =
        vec![std::collections::BTreeMap::new(); n_comms];
    for u in 0..level.len() {
        let cu = comm[u];
        loops[cu] += level.loops[u];
        for &(v, w) in &level.adj[u] {
            let cv = comm[v as usize];
            if cu == cv {
                if u < v as usize {
                    loops[cu] += w;
                }
            } else {
                *maps[cu].entry(cv as u32).or_insert_with(T::zero) += w;
            }
        }
    }
    let adj: Vec<Vec<(u32, T)>> = maps.into_iter().map(|m| m.into_iter().collect()).collect();
    let degree: Vec<T> = (0..n_comms)
        .map(|c| {
            adj[c].iter().map(|&(_, w)| w).sum::<T>() + T::lit(2.0) * loops[c]
        })
        .collect();
    Level {
        adj,
        loops,
        degree,
        two_m: level.two_m,
    }
}

fn renumber(comm: &mut [usize]) -> usize {
    let mut map = std::collections::HashMap::new();
    let mut next = 0usize;
    for c in comm.iter_mut() {
        let id = *map.entry(*c).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
        *c = id;
    }
    next
}

/// Greedy modularity maximization. Returns one community label per internal
/// node index plus the modularity of the found partition on the original
/// graph; `None` for edgeless graphs.
pub fn modularity_score<T: Real>(g: &Graph) -> Option<(Vec<usize>, T)> {
    if g.edge_count() == 0 {
        return None;
    }
    let n = g.node_count();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut level = Level::<T>::from_graph(g);
    let base_order = wl_order(g);
    for depth in 0..64usize {
        let order: Vec<usize> = if depth == 0 {
            base_order.clone()
        } else {
            // Aggregated node ids already follow first-appearance order of
            // the structural base order.
            (0..level.len()).collect()
        };
        let (mut comm, moved) = local_moving(&level, &order);
        if !moved {
            break;
        }
        let n_comms = renumber(&mut comm);
        for l in labels.iter_mut() {
            *l = comm[*l];
        }
        if n_comms == level.len() {
            break;
        }
        level = aggregate(&level, &comm, n_comms);
    }
    renumber(&mut labels);
    let q = partition_modularity(g, &labels).expect("edge count checked above");
    Some((labels, q))
}
