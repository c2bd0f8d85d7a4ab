//! Distributed bag-of-words document training with negative sampling.
//!
//! Token vectors are pinned at a content-keyed random initialization and
//! only the document vectors are learned: each document vector is pushed to
//! score its own tokens above noise tokens drawn from the unigram^(3/4)
//! distribution. Pinned token vectors plus per-document RNG streams keyed on
//! `(seed, document content)` make every document's trajectory independent
//! of corpus order and of the other documents, so isomorphic graphs land on
//! bit-identical rows.

use super::wl::WlDocument;
use crate::hash::fnv1a64;
use crate::ids::GameId;
use crate::rng::derive_rng;
use crate::scalar::Real;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use thiserror::Error;

const TOKEN_TAG: u64 = 0x746f6b; // "tok"
const DOC_TAG: u64 = 0x646f63; // "doc"

/// Relative learning-rate floor of the linear decay.
const LR_FLOOR: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("vocabulary is empty after dropping tokens seen fewer than {min_token_count} times")]
    EmptyVocabulary { min_token_count: usize },
    #[error("embedding csv parse error at line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingConfig {
    pub dimension: usize,
    pub wl_iterations: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub negative_samples: usize,
    pub min_token_count: usize,
    pub seed: u64,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig {
            dimension: 8,
            wl_iterations: 2,
            epochs: 10,
            learning_rate: 0.025,
            negative_samples: 5,
            min_token_count: 1,
            seed: 42,
        }
    }
}

/// One embedding row per input document, in corpus order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingMatrix<T> {
    pub ids: Vec<GameId>,
    pub rows: Vec<Vec<T>>,
    pub vocabulary: BTreeMap<String, usize>,
    pub dimension: usize,
}

impl<T: Real + std::fmt::LowerExp> EmbeddingMatrix<T> {
    /// `graph_id,v0,...,v{d-1}` with 9 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header: Vec<String> = std::iter::once("graph_id".to_string())
            .chain((0..self.dimension).map(|j| format!("v{j}")))
            .collect();
        writeln!(w, "{}", header.join(","))?;
        for (id, row) in self.ids.iter().zip(&self.rows) {
            write!(w, "{id}")?;
            for v in row {
                write!(w, ",{v:.8e}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Parse the CSV written by [`EmbeddingMatrix::write_csv`]. The
    /// vocabulary is not part of the format and comes back empty.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self, EmbeddingError> {
        let mut ids = Vec::new();
        let mut rows: Vec<Vec<T>> = Vec::new();
        let mut dimension = 0usize;
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            if i == 0 {
                dimension = line.split(',').count().saturating_sub(1);
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let err = |message: String| EmbeddingError::Csv {
                line: i + 1,
                message,
            };
            let id = fields
                .next()
                .ok_or_else(|| err("missing graph_id".into()))?
                .parse()
                .map_err(|e| err(format!("bad graph_id: {e}")))?;
            let row: Vec<T> = fields
                .map(|f| {
                    f.parse::<f64>()
                        .map(T::lit)
                        .map_err(|e| err(format!("bad value {f:?}: {e}")))
                })
                .collect::<Result<_, _>>()?;
            if row.len() != dimension {
                return Err(err(format!(
                    "expected {dimension} values, found {}",
                    row.len()
                )));
            }
            ids.push(id);
            rows.push(row);
        }
        Ok(EmbeddingMatrix {
            ids,
            rows,
            vocabulary: BTreeMap::new(),
            dimension,
        })
    }
}

fn sigmoid<T: Real>(x: T) -> T {
    if x >= T::zero() {
        (T::one() + (-x).exp()).recip()
    } else {
        let e = x.exp();
        e / (T::one() + e)
    }
}

/// `ln(1 + e^x)`, stable for large |x|.
fn softplus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + x.neg().exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Logistic negative-sampling loss of one (document, token) pair and its
/// gradient with respect to the document vector:
/// `L = −ln σ(v·w⁺) − Σ_k ln σ(−v·w⁻_k)`.
pub fn pair_loss_and_grad<T: Real>(doc: &[T], positive: &[T], negatives: &[&[T]]) -> (T, Vec<T>) {
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).map(|(&x, &y)| x * y).sum::<T>();
    let mut grad = vec![T::zero(); doc.len()];
    let s = dot(doc, positive);
    let mut loss = softplus(-s);
    let coeff = sigmoid(s) - T::one();
    for (g, &w) in grad.iter_mut().zip(positive) {
        *g += coeff * w;
    }
    for neg in negatives {
        let s = dot(doc, neg);
        loss += softplus(s);
        let coeff = sigmoid(s);
        for (g, &w) in grad.iter_mut().zip(*neg) {
            *g += coeff * w;
        }
    }
    (loss, grad)
}

/// Pinned unit-norm token vector, keyed on the token text so the value is
/// independent of vocabulary and corpus order.
fn token_vector<T: Real>(token: &str, dimension: usize, seed: u64) -> Vec<T> {
    let mut rng = derive_rng(seed, &[TOKEN_TAG, fnv1a64(token.as_bytes())]);
    let raw: Vec<f64> = (0..dimension).map(|_| rng.random::<f64>() - 0.5).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
    raw.into_iter().map(|x| T::lit(x / norm)).collect()
}

/// Cumulative unigram^(3/4) noise table over vocabulary indices.
struct NoiseTable {
    cumulative: Vec<f64>,
}

impl NoiseTable {
    fn new(counts: &[usize]) -> Self {
        let mut cumulative = Vec::with_capacity(counts.len());
        let mut acc = 0.0;
        for &c in counts {
            acc += (c as f64).powf(0.75);
            cumulative.push(acc);
        }
        NoiseTable { cumulative }
    }

    fn draw(&self, rng: &mut rand_chacha::ChaCha8Rng) -> usize {
        let total = *self.cumulative.last().expect("non-empty vocabulary");
        let u = rng.random::<f64>() * total;
        self.cumulative.partition_point(|&c| c <= u)
    }
}

/// Train document vectors; returns the matrix and the mean pair loss per
/// epoch.
pub fn train_with_loss<T: Real>(
    corpus: &[WlDocument],
    cfg: &EmbeddingConfig,
) -> Result<(EmbeddingMatrix<T>, Vec<T>), EmbeddingError> {
    if corpus.is_empty() {
        return Err(EmbeddingError::EmptyCorpus);
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in corpus {
        for t in &doc.tokens {
            *counts.entry(t).or_insert(0) += 1;
        }
    }
    let vocabulary: BTreeMap<String, usize> = counts
        .iter()
        .filter(|&(_, &c)| c >= cfg.min_token_count)
        .enumerate()
        .map(|(i, (&t, _))| (t.to_string(), i))
        .collect();
    if vocabulary.is_empty() {
        return Err(EmbeddingError::EmptyVocabulary {
            min_token_count: cfg.min_token_count,
        });
    }
    let vocab_counts: Vec<usize> = {
        let mut v = vec![0usize; vocabulary.len()];
        for (t, &i) in &vocabulary {
            v[i] = counts[t.as_str()];
        }
        v
    };
    let token_vecs: Vec<Vec<T>> = {
        let mut v = vec![Vec::new(); vocabulary.len()];
        for (t, &i) in &vocabulary {
            v[i] = token_vector(t, cfg.dimension, cfg.seed);
        }
        v
    };
    let noise = NoiseTable::new(&vocab_counts);

    let mut rows: Vec<Vec<T>> = Vec::with_capacity(corpus.len());
    let mut loss_sums = vec![T::zero(); cfg.epochs];
    let mut loss_counts = vec![0usize; cfg.epochs];
    let lr0 = cfg.learning_rate;

    for doc in corpus {
        let pair_tokens: Vec<usize> = doc
            .tokens
            .iter()
            .filter_map(|t| vocabulary.get(t).copied())
            .collect();
        let mut v = vec![T::zero(); cfg.dimension];
        let total_updates = (cfg.epochs * pair_tokens.len()).max(1);
        let content = doc.content_hash();
        let mut negs: Vec<&[T]> = Vec::with_capacity(cfg.negative_samples);
        for epoch in 0..cfg.epochs {
            let mut rng = derive_rng(cfg.seed, &[DOC_TAG, content, epoch as u64]);
            let mut order: Vec<usize> = (0..pair_tokens.len()).collect();
            order.shuffle(&mut rng);
            for (j, &pi) in order.iter().enumerate() {
                let target = pair_tokens[pi];
                let progress = (epoch * pair_tokens.len() + j) as f64 / total_updates as f64;
                let lr = T::lit(lr0 * (1.0 - progress).max(LR_FLOOR));
                negs.clear();
                for _ in 0..cfg.negative_samples {
                    let cand = noise.draw(&mut rng);
                    // Collisions with the target are skipped, not redrawn.
                    if cand != target {
                        negs.push(&token_vecs[cand]);
                    }
                }
                let (loss, grad) = pair_loss_and_grad(&v, &token_vecs[target], &negs);
                for (x, g) in v.iter_mut().zip(&grad) {
                    *x -= lr * *g;
                }
                loss_sums[epoch] += loss;
                loss_counts[epoch] += 1;
            }
        }
        rows.push(v);
    }

    let losses = loss_sums
        .into_iter()
        .zip(loss_counts)
        .map(|(s, c)| if c == 0 { T::zero() } else { s / T::of(c) })
        .collect();
    Ok((
        EmbeddingMatrix {
            ids: corpus.iter().map(|d| d.graph_id).collect(),
            rows,
            vocabulary,
            dimension: cfg.dimension,
        },
        losses,
    ))
}

/// [`train_with_loss`] without the loss trace.
pub fn train<T: Real>(
    corpus: &[WlDocument],
    cfg: &EmbeddingConfig,
) -> Result<EmbeddingMatrix<T>, EmbeddingError> {
    train_with_loss(corpus, cfg).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::wl_document;
    use crate::graph::Graph;
    use crate::ids::PlayerId;

    fn p(id: u64) -> PlayerId {
        PlayerId(id)
    }

    fn doc(id: u64, tokens: &[&str]) -> WlDocument {
        let mut tokens: Vec<String> = tokens.iter().map(|s| s.to_string()).collect();
        tokens.sort();
        WlDocument {
            graph_id: GameId(id),
            tokens,
        }
    }

    fn cosine(a: &[f64], b: &[f64]) -> f64 {
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        dot / (na * nb)
    }

    #[test]
    fn identical_documents_get_identical_rows() {
        let corpus = vec![
            doc(1, &["0:1", "0:2", "1:77"]),
            doc(2, &["0:1", "0:2", "1:77"]),
            doc(3, &["0:9", "0:9", "1:4"]),
        ];
        let m: EmbeddingMatrix<f64> = train(&corpus, &EmbeddingConfig::default()).unwrap();
        assert_eq!(m.rows[0], m.rows[1]);
        assert!((cosine(&m.rows[0], &m.rows[1]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_document_corpus_gives_one_finite_row() {
        let corpus = vec![doc(1, &["0:1", "0:1", "0:2"])];
        let m: EmbeddingMatrix<f64> = train(&corpus, &EmbeddingConfig::default()).unwrap();
        assert_eq!(m.rows.len(), 1);
        assert_eq!(m.rows[0].len(), 8);
        assert!(m.rows[0].iter().all(|x| x.is_finite()));
    }

    #[test]
    fn corpus_permutation_leaves_vectors_unchanged() {
        let g1 = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(3), p(1))]);
        let g2 = Graph::from_edges([(p(1), p(2)), (p(2), p(3))]);
        let g3 = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(3), p(4)), (p(4), p(1))]);
        let a = wl_document(&g1, GameId(1), 2);
        let b = wl_document(&g2, GameId(2), 2);
        let c = wl_document(&g3, GameId(3), 2);
        let cfg = EmbeddingConfig::default();
        let m1: EmbeddingMatrix<f64> =
            train(&[a.clone(), b.clone(), c.clone()], &cfg).unwrap();
        let m2: EmbeddingMatrix<f64> = train(&[c, a, b], &cfg).unwrap();
        // Row order follows corpus order; per-id vectors are unchanged.
        assert_eq!(m1.rows[0], m2.rows[1]);
        assert_eq!(m1.rows[1], m2.rows[2]);
        assert_eq!(m1.rows[2], m2.rows[0]);
        assert_eq!(m1.vocabulary, m2.vocabulary);
    }

    #[test]
    fn loss_decreases_over_epochs() {
        // Mixed stars and cliques so documents carry distinctive tokens.
        let corpus: Vec<WlDocument> = (0..6)
            .map(|i| {
                let n = 5 + i;
                let g = if i % 2 == 0 {
                    Graph::from_edges((2..=n).map(|j| (p(1), p(j))))
                } else {
                    let mut edges = Vec::new();
                    for a in 1..=n {
                        for b in (a + 1)..=n {
                            edges.push((p(a), p(b)));
                        }
                    }
                    Graph::from_edges(edges)
                };
                wl_document(&g, GameId(i), 2)
            })
            .collect();
        let (_, losses): (EmbeddingMatrix<f64>, Vec<f64>) =
            train_with_loss(&corpus, &EmbeddingConfig::default()).unwrap();
        assert_eq!(losses.len(), 10);
        assert!(losses.last().unwrap() < &losses[0]);
    }

    #[test]
    fn zero_epochs_means_no_loss_entries() {
        let corpus = vec![doc(1, &["0:1"])];
        let cfg = EmbeddingConfig {
            epochs: 0,
            ..EmbeddingConfig::default()
        };
        let (m, losses): (EmbeddingMatrix<f64>, Vec<f64>) =
            train_with_loss(&corpus, &cfg).unwrap();
        assert!(losses.is_empty());
        assert!(m.rows[0].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn identical_runs_produce_identical_loss_traces() {
        let corpus = vec![doc(1, &["0:1", "0:2"]), doc(2, &["0:2", "0:3"])];
        let cfg = EmbeddingConfig::default();
        let (_, l1): (EmbeddingMatrix<f64>, _) = train_with_loss(&corpus, &cfg).unwrap();
        let (_, l2): (EmbeddingMatrix<f64>, _) = train_with_loss(&corpus, &cfg).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn over_filtered_vocabulary_errors() {
        let corpus = vec![doc(1, &["0:1", "0:2"])];
        let cfg = EmbeddingConfig {
            min_token_count: 99,
            ..EmbeddingConfig::default()
        };
        assert!(matches!(
            train::<f64>(&corpus, &cfg),
            Err(EmbeddingError::EmptyVocabulary { .. })
        ));
    }

    #[test]
    fn csv_round_trip_preserves_layout() {
        let corpus = vec![doc(7, &["0:1", "0:2"]), doc(9, &["0:2", "0:3"])];
        let m: EmbeddingMatrix<f64> = train(&corpus, &EmbeddingConfig::default()).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("graph_id,v0,v1,"));
        let back = EmbeddingMatrix::<f64>::read_csv(&buf[..]).unwrap();
        assert_eq!(back.ids, m.ids);
        assert_eq!(back.dimension, 8);
        for (a, b) in back.rows.iter().flatten().zip(m.rows.iter().flatten()) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0));
        }
    }
}
