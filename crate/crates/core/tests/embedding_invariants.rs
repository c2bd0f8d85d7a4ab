//! Embedding invariants: label-refinement invariance under isomorphism,
//! gradient correctness, and separation of structurally distinct families.

mod common;

use common::{gnp, p, preferential_attachment};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steamnet_core::embedding::{
    pair_loss_and_grad, train, wl_document, EmbeddingConfig, EmbeddingMatrix,
};
use steamnet_core::graph::Graph;
use steamnet_core::ids::GameId;

/// Random node permutation of a graph.
fn permuted(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<u64> = (1..=g.node_count() as u64).map(|i| i * 13 + 1000).collect();
    targets.shuffle(&mut rng);
    let map: std::collections::HashMap<_, _> = g
        .nodes()
        .iter()
        .copied()
        .zip(targets.into_iter().map(p))
        .collect();
    Graph::from_parts(
        g.nodes().iter().map(|id| map[id]),
        g.edges().map(|(a, b)| (map[&a], map[&b])),
    )
    .0
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb).max(1e-300)
}

#[test]
fn wl_documents_are_isomorphism_invariant_and_rows_match() {
    let mut corpus = Vec::new();
    for seed in 0..20u64 {
        let g = gnp(12 + seed % 5, 0.3, 500 + seed);
        let h = permuted(&g, 900 + seed);
        let dg = wl_document(&g, GameId(2 * seed), 3);
        let dh = wl_document(&h, GameId(2 * seed + 1), 3);
        assert_eq!(dg.tokens, dh.tokens, "seed {seed}");
        corpus.push(dg);
        corpus.push(dh);
    }
    let m: EmbeddingMatrix<f64> = train(&corpus, &EmbeddingConfig::default()).unwrap();
    for i in (0..m.rows.len()).step_by(2) {
        // Bit-identical rows: the cosine distance is exactly zero; the
        // cosine recomputation itself only carries sqrt round-off.
        assert_eq!(m.rows[i], m.rows[i + 1], "pair {i}");
        assert!((1.0 - cosine(&m.rows[i], &m.rows[i + 1])).abs() < 1e-12);
    }
}

#[test]
fn analytic_gradient_matches_central_differences() {
    // A document vector state away from zero, checked against central
    // finite differences of the pair loss.
    let doc = vec![0.31, -0.22, 0.11, 0.47, -0.35, 0.05, -0.18, 0.26];
    let positive: Vec<f64> = (0..8).map(|i| ((i * 37 + 5) % 11) as f64 / 11.0 - 0.5).collect();
    let neg1: Vec<f64> = (0..8).map(|i| ((i * 17 + 3) % 7) as f64 / 7.0 - 0.5).collect();
    let neg2: Vec<f64> = (0..8).map(|i| ((i * 29 + 1) % 13) as f64 / 13.0 - 0.5).collect();
    let negatives = [neg1.as_slice(), neg2.as_slice()];

    let (_, grad) = pair_loss_and_grad(&doc, &positive, &negatives);
    let step = 1e-3;
    for i in 0..doc.len() {
        let mut plus = doc.clone();
        plus[i] += step;
        let mut minus = doc.clone();
        minus[i] -= step;
        let (lp, _) = pair_loss_and_grad(&plus, &positive, &negatives);
        let (lm, _) = pair_loss_and_grad(&minus, &positive, &negatives);
        let numeric = (lp - lm) / (2.0 * step);
        let rel = (grad[i] - numeric).abs() / grad[i].abs().max(numeric.abs()).max(1e-12);
        assert!(rel < 1e-4, "coordinate {i}: analytic {} vs numeric {numeric}", grad[i]);
    }
}

#[test]
fn dense_and_sparse_families_separate() {
    // 30 dense near-clique documents vs 30 sparse tree-like documents:
    // intra-family cosine must exceed inter-family cosine on average.
    let mut corpus = Vec::new();
    for i in 0..30u64 {
        let g = gnp(20 + i % 6, 0.85, 700 + i);
        corpus.push(wl_document(&g, GameId(i), 2));
    }
    for i in 0..30u64 {
        let g = preferential_attachment(20 + i % 6, 1, 800 + i);
        corpus.push(wl_document(&g, GameId(100 + i), 2));
    }
    let m: EmbeddingMatrix<f64> = train(&corpus, &EmbeddingConfig::default()).unwrap();
    let mut intra = Vec::new();
    let mut inter = Vec::new();
    for i in 0..60 {
        for j in (i + 1)..60 {
            let c = cosine(&m.rows[i], &m.rows[j]);
            if (i < 30) == (j < 30) {
                intra.push(c);
            } else {
                inter.push(c);
            }
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    assert!(
        mean(&intra) > mean(&inter),
        "intra {} vs inter {}",
        mean(&intra),
        mean(&inter)
    );
}

#[test]
fn rows_are_finite_and_nonzero_on_varied_corpora() {
    let corpus: Vec<_> = (0..10u64)
        .map(|i| wl_document(&gnp(15, 0.2 + 0.05 * i as f64, i), GameId(i), 2))
        .collect();
    let m: EmbeddingMatrix<f64> = train(&corpus, &EmbeddingConfig::default()).unwrap();
    for row in &m.rows {
        assert!(row.iter().all(|x| x.is_finite()));
        let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(norm > 1e-6, "row collapsed: norm {norm}");
    }
}
