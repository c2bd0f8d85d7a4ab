//! Shared fixtures for the integration suites: seeded random graphs and
//! brute-force oracles kept independent of the library's algorithm paths.
//!
//! Each integration target compiles this module separately, so not every
//! helper is used by every target.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steamnet_core::graph::Graph;
use steamnet_core::ids::PlayerId;
use std::collections::VecDeque;

pub fn p(id: u64) -> PlayerId {
    PlayerId(id)
}

/// Erdős–Rényi graph on nodes 1..=n with edge probability `prob`.
pub fn gnp(n: u64, prob: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            if rng.random::<f64>() < prob {
                edges.push((p(a), p(b)));
            }
        }
    }
    Graph::from_parts((1..=n).map(p), edges).0
}

/// Preferential-attachment graph: each new node links to `m` existing nodes
/// chosen proportionally to degree (plus one), nodes 1..=n.
pub fn preferential_attachment(n: u64, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64)> = vec![(1, 2)];
    let mut stubs: Vec<u64> = vec![1, 2];
    for v in 3..=n {
        let mut chosen = std::collections::BTreeSet::new();
        while chosen.len() < m.min(v as usize - 1) {
            let pick = if rng.random::<f64>() < 0.2 || stubs.is_empty() {
                1 + rng.random_range(0..v - 1)
            } else {
                stubs[rng.random_range(0..stubs.len())]
            };
            chosen.insert(pick);
        }
        for &u in &chosen {
            edges.push((u, v));
            stubs.push(u);
            stubs.push(v);
        }
    }
    Graph::from_parts((1..=n).map(p), edges.into_iter().map(|(a, b)| (p(a), p(b)))).0
}

/// Naive betweenness oracle: all-pairs BFS counts, then the direct triple
/// sum `Σ_{s<t} σ_sv·σ_vt·[d(s,v)+d(v,t)=d(s,t)] / σ_st`, normalized like
/// the library. No dependency-accumulation shortcut.
pub fn naive_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![vec![-1i64; n]; n];
    let mut sigma = vec![vec![0u128; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        sigma[s][s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                let w = w as usize;
                if dist[s][w] < 0 {
                    dist[s][w] = dist[s][v] + 1;
                    queue.push_back(w);
                }
                if dist[s][w] == dist[s][v] + 1 {
                    sigma[s][w] += sigma[s][v];
                }
            }
        }
    }
    let mut scores = vec![0.0f64; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if sigma[s][t] == 0 {
                continue;
            }
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                if dist[s][v] >= 0
                    && dist[t][v] >= 0
                    && dist[s][v] + dist[v][t] == dist[s][t]
                {
                    let through = sigma[s][v] * sigma[t][v];
                    scores[v] += through as f64 / sigma[s][t] as f64;
                }
            }
        }
    }
    if n >= 3 {
        let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
        for b in &mut scores {
            *b /= pairs;
        }
    }
    scores
}
