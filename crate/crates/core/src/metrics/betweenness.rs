//! Shortest-path betweenness centrality (Brandes' single-source
//! accumulation), normalized to the star-graph maximum.

use crate::graph::Graph;
use crate::scalar::Real;
use std::collections::VecDeque;

/// Normalized betweenness per node, indexed by the graph's internal node
/// index.
///
/// Each unordered node pair contributes its pair dependency once; the sum is
/// divided by `(n−1)(n−2)/2`, the number of pairs a node can sit between, so
/// the center of a star scores exactly 1. On disconnected graphs only
/// reachable pairs contribute while the normalization is kept, matching the
/// connected-graph convention.
pub fn betweenness<T: Real>(g: &Graph) -> Vec<T> {
    let n = g.node_count();
    let mut scores = vec![T::zero(); n];
    if n < 3 {
        return scores;
    }

    let mut stack: Vec<u32> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut sigma = vec![T::zero(); n];
    let mut dist = vec![-1i32; n];
    let mut delta = vec![T::zero(); n];
    let mut queue = VecDeque::new();

    for s in 0..n as u32 {
        stack.clear();
        for list in &mut preds {
            list.clear();
        }
        sigma.fill(T::zero());
        dist.fill(-1);
        delta.fill(T::zero());

        sigma[s as usize] = T::one();
        dist[s as usize] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            let dv = dist[v as usize];
            let sv = sigma[v as usize];
            for &w in g.neighbors(v as usize) {
                if dist[w as usize] < 0 {
                    dist[w as usize] = dv + 1;
                    queue.push_back(w);
                }
                if dist[w as usize] == dv + 1 {
                    sigma[w as usize] += sv;
                    preds[w as usize].push(v);
                }
            }
        }

        while let Some(w) = stack.pop() {
            let coeff = (T::one() + delta[w as usize]) / sigma[w as usize];
            for &v in &preds[w as usize] {
                delta[v as usize] += sigma[v as usize] * coeff;
            }
            if w != s {
                scores[w as usize] += delta[w as usize];
            }
        }
    }

    // Each unordered pair was accumulated from both endpoints. Dividing
    // (rather than multiplying by a reciprocal) keeps anchor cases exact:
    // the star center accumulates exactly (n−1)(n−2) and must score 1.
    let denom = T::of(n - 1) * T::of(n - 2);
    for b in &mut scores {
        *b /= denom;
    }
    scores
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::PlayerId;
    use approx::assert_relative_eq;

    fn p(id: u64) -> PlayerId {
        PlayerId(id)
    }

    #[test]
    fn star_center_scores_one() {
        let g = Graph::from_edges((2..=8u64).map(|i| (p(1), p(i))));
        let b = betweenness::<f64>(&g);
        let center = g.index_of(p(1)).unwrap();
        assert_eq!(b[center], 1.0);
        for (i, &x) in b.iter().enumerate() {
            if i != center {
                assert_eq!(x, 0.0);
            }
        }
    }

    #[test]
    fn complete_graph_scores_zero() {
        let mut edges = Vec::new();
        for a in 1..=4u64 {
            for b in (a + 1)..=4 {
                edges.push((p(a), p(b)));
            }
        }
        let g = Graph::from_edges(edges);
        assert!(betweenness::<f64>(&g).iter().all(|&b| b == 0.0));
    }

    #[test]
    fn path_of_four() {
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(3), p(4))]);
        let b = betweenness::<f64>(&g);
        assert_relative_eq!(b[0], 0.0);
        assert_relative_eq!(b[1], 2.0 / 3.0);
        assert_relative_eq!(b[2], 2.0 / 3.0);
        assert_relative_eq!(b[3], 0.0);
    }

    #[test]
    fn disconnected_pairs_do_not_contribute() {
        // Path 1-2-3 plus isolated pair 4-5: node 2 bridges one pair only.
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(4), p(5))]);
        let b = betweenness::<f64>(&g);
        let pairs = 4.0 * 3.0 / 2.0;
        assert_relative_eq!(b[g.index_of(p(2)).unwrap()], 1.0 / pairs);
    }
}
