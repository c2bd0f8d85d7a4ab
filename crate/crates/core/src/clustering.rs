//! K-means over embedding rows with the model-selection instrumentation
//! used to pick the cluster count: a distortion/elbow sweep and silhouette
//! scores. The tool never auto-selects `k`; it reports the sweep and takes
//! `k` from configuration.

use crate::embedding::EmbeddingMatrix;
use crate::ids::GameId;
use crate::rng::derive_rng;
use crate::scalar::Real;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

const RESTART_TAG: u64 = 0x6b6d; // "km"
const SWEEP_TAG: u64 = 0x7377; // "sw"

#[derive(Debug, Error)]
pub enum ClusteringError {
    #[error("k-means needs at least {k} distinct points, found {distinct}")]
    TooFewDistinctPoints { distinct: usize, k: usize },
    #[error("silhouette requires at least 2 clusters")]
    TooFewClusters,
    #[error("cluster {0} is empty")]
    EmptyCluster(usize),
    #[error("sweep upper bound k_max={k_max} must be at most samples−1={limit}")]
    SweepOutOfRange { k_max: usize, limit: usize },
    #[error("labels ({labels}) and points ({points}) disagree")]
    LengthMismatch { labels: usize, points: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusteringConfig {
    pub k: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub n_init: usize,
    pub max_iter: usize,
    /// Relative inertia change below which Lloyd iteration stops.
    pub tol: f64,
    pub seed: u64,
}

impl Default for ClusteringConfig {
    fn default() -> Self {
        ClusteringConfig {
            k: 6,
            k_min: 2,
            k_max: 10,
            n_init: 10,
            max_iter: 300,
            tol: 1e-6,
            seed: 42,
        }
    }
}

/// Result of one clustering: labels aligned with `ids`, the centers, and
/// the sum of squared distances to assigned centers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterAssignment<T> {
    pub ids: Vec<GameId>,
    pub labels: Vec<usize>,
    pub centers: Vec<Vec<T>>,
    pub inertia: T,
}

impl<T: Copy> ClusterAssignment<T> {
    /// Label lookup keyed by graph id.
    pub fn label_of(&self) -> HashMap<GameId, usize> {
        self.ids.iter().copied().zip(self.labels.iter().copied()).collect()
    }
}

fn sq_dist<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// Distance-weighted (k-means++ style) seeding.
fn seed_centers<T: Real>(rows: &[Vec<T>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<T>> {
    let n = rows.len();
    let mut centers: Vec<Vec<T>> = Vec::with_capacity(k);
    centers.push(rows[rng.random_range(0..n)].clone());
    let mut d2: Vec<T> = rows.iter().map(|r| sq_dist(r, &centers[0])).collect();
    while centers.len() < k {
        let total: T = d2.iter().copied().sum();
        let next = if total > T::zero() {
            let mut u = T::lit(rng.random::<f64>()) * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if u < w {
                    pick = i;
                    break;
                }
                u -= w;
            }
            pick
        } else {
            // All remaining mass on existing centers; take the first point
            // not already chosen (caller guarantees k distinct points).
            (0..n)
                .find(|&i| centers.iter().all(|c| c != &rows[i]))
                .expect("k distinct points")
        };
        centers.push(rows[next].clone());
        for (i, row) in rows.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(row, centers.last().expect("non-empty")));
        }
    }
    centers
}

fn assign<T: Real>(rows: &[Vec<T>], centers: &[Vec<T>], labels: &mut [usize]) -> T {
    let mut inertia = T::zero();
    for (i, row) in rows.iter().enumerate() {
        let mut best = 0usize;
        let mut best_d = sq_dist(row, &centers[0]);
        for (c, center) in centers.iter().enumerate().skip(1) {
            let d = sq_dist(row, center);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        labels[i] = best;
        inertia += best_d;
    }
    inertia
}

fn lloyd<T: Real>(
    rows: &[Vec<T>],
    k: usize,
    max_iter: usize,
    tol: T,
    rng: &mut ChaCha8Rng,
) -> (Vec<usize>, Vec<Vec<T>>, T) {
    let n = rows.len();
    let d = rows[0].len();
    let mut centers = seed_centers(rows, k, rng);
    let mut labels = vec![0usize; n];
    let mut inertia = assign(rows, &centers, &mut labels);
    for _ in 0..max_iter {
        // Means per cluster.
        let mut sums = vec![vec![T::zero(); d]; k];
        let mut counts = vec![0usize; k];
        for (row, &l) in rows.iter().zip(&labels) {
            counts[l] += 1;
            for (s, &x) in sums[l].iter_mut().zip(row) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // Re-seed an emptied cluster from the farthest point.
                let far = (0..n)
                    .max_by(|&a, &b| {
                        sq_dist(&rows[a], &centers[labels[a]])
                            .partial_cmp(&sq_dist(&rows[b], &centers[labels[b]]))
                            .expect("finite distances")
                            .then(b.cmp(&a))
                    })
                    .expect("non-empty rows");
                centers[c] = rows[far].clone();
            } else {
                for (j, s) in sums[c].iter().enumerate() {
                    centers[c][j] = *s / T::of(counts[c]);
                }
            }
        }
        let new_inertia = assign(rows, &centers, &mut labels);
        let drop = inertia - new_inertia;
        let done = drop <= tol * inertia;
        inertia = new_inertia;
        if done {
            break;
        }
    }
    (labels, centers, inertia)
}

/// Best-of-`n_init` Lloyd runs with k-means++ seeding; deterministic for a
/// fixed seed. Errors when fewer than `k` distinct points exist.
pub fn kmeans<T: Real>(
    points: &EmbeddingMatrix<T>,
    cfg: &ClusteringConfig,
) -> Result<ClusterAssignment<T>, ClusteringError> {
    kmeans_at(points, cfg.k, cfg)
}

fn kmeans_at<T: Real>(
    points: &EmbeddingMatrix<T>,
    k: usize,
    cfg: &ClusteringConfig,
) -> Result<ClusterAssignment<T>, ClusteringError> {
    let rows = &points.rows;
    let mut distinct: Vec<&Vec<T>> = Vec::new();
    for row in rows {
        if !distinct.contains(&row) {
            distinct.push(row);
        }
    }
    if distinct.len() < k {
        return Err(ClusteringError::TooFewDistinctPoints {
            distinct: distinct.len(),
            k,
        });
    }
    let tol = T::lit(cfg.tol);
    let mut best: Option<(Vec<usize>, Vec<Vec<T>>, T)> = None;
    for restart in 0..cfg.n_init.max(1) {
        let mut rng = derive_rng(cfg.seed, &[RESTART_TAG, k as u64, restart as u64]);
        let run = lloyd(rows, k, cfg.max_iter, tol, &mut rng);
        if best.as_ref().is_none_or(|b| run.2 < b.2) {
            best = Some(run);
        }
    }
    let (labels, centers, inertia) = best.expect("n_init >= 1");
    Ok(ClusterAssignment {
        ids: points.ids.clone(),
        labels,
        centers,
        inertia,
    })
}

/// Mean and per-point silhouette scores `(b − a)/max(a, b)` with Euclidean
/// distances; singleton clusters score 0.
pub fn silhouette<T: Real>(rows: &[Vec<T>], labels: &[usize]) -> Result<(T, Vec<T>), ClusteringError> {
    if rows.len() != labels.len() {
        return Err(ClusteringError::LengthMismatch {
            labels: labels.len(),
            points: rows.len(),
        });
    }
    let k = labels.iter().max().map_or(0, |&l| l + 1);
    if k < 2 {
        return Err(ClusteringError::TooFewClusters);
    }
    let mut sizes = vec![0usize; k];
    for &l in labels {
        sizes[l] += 1;
    }
    if let Some(c) = sizes.iter().position(|&s| s == 0) {
        return Err(ClusteringError::EmptyCluster(c));
    }
    let n = rows.len();
    let mut scores = vec![T::zero(); n];
    for i in 0..n {
        if sizes[labels[i]] == 1 {
            continue;
        }
        let mut dist_sum = vec![T::zero(); k];
        for j in 0..n {
            if i == j {
                continue;
            }
            dist_sum[labels[j]] += sq_dist(&rows[i], &rows[j]).sqrt();
        }
        let a = dist_sum[labels[i]] / T::of(sizes[labels[i]] - 1);
        let b = (0..k)
            .filter(|&c| c != labels[i])
            .map(|c| dist_sum[c] / T::of(sizes[c]))
            .fold(T::infinity(), T::min);
        let denom = a.max(b);
        if denom > T::zero() {
            scores[i] = (b - a) / denom;
        }
    }
    let mean = scores.iter().copied().sum::<T>() / T::of(n);
    Ok((mean, scores))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow<T> {
    pub k: usize,
    pub inertia: T,
    pub silhouette: T,
}

/// Per-k distortion/silhouette table for `k ∈ [k_min, k_max]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepTable<T> {
    pub rows: Vec<SweepRow<T>>,
    /// Values of `k` whose best inertia exceeded that of `k−1`; restart
    /// noise that callers may want to flag.
    pub inertia_violations: Vec<usize>,
}

impl<T: Real> SweepTable<T> {
    /// `k` of the row with the highest silhouette.
    pub fn best_silhouette_k(&self) -> Option<usize> {
        self.rows
            .iter()
            .max_by(|a, b| {
                a.silhouette
                    .partial_cmp(&b.silhouette)
                    .expect("finite silhouettes")
                    .then(b.k.cmp(&a.k))
            })
            .map(|r| r.k)
    }
}

/// Run k-means for every `k` in the sweep range with per-k derived seeds.
pub fn sweep<T: Real>(
    points: &EmbeddingMatrix<T>,
    cfg: &ClusteringConfig,
) -> Result<SweepTable<T>, ClusteringError> {
    let n = points.rows.len();
    if cfg.k_max + 1 > n {
        return Err(ClusteringError::SweepOutOfRange {
            k_max: cfg.k_max,
            limit: n.saturating_sub(1),
        });
    }
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut prev_inertia: Option<T> = None;
    for k in cfg.k_min..=cfg.k_max {
        let sub_cfg = ClusteringConfig {
            seed: crate::rng::derive_seed(cfg.seed, &[SWEEP_TAG, k as u64]),
            ..cfg.clone()
        };
        let assignment = kmeans_at(points, k, &sub_cfg)?;
        let (mean_sil, _) = silhouette(&points.rows, &assignment.labels)?;
        if let Some(prev) = prev_inertia {
            if assignment.inertia > prev {
                violations.push(k);
            }
        }
        prev_inertia = Some(assignment.inertia);
        rows.push(SweepRow {
            k,
            inertia: assignment.inertia,
            silhouette: mean_sil,
        });
    }
    Ok(SweepTable {
        rows,
        inertia_violations: violations,
    })
}

/// Adjusted Rand index between two labelings of the same points.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> f64 {
    assert_eq!(a.len(), b.len(), "labelings must cover the same points");
    let n = a.len();
    if n == 0 {
        return 1.0;
    }
    let ka = a.iter().max().map_or(0, |&x| x + 1);
    let kb = b.iter().max().map_or(0, |&x| x + 1);
    let mut table = vec![vec![0u64; kb]; ka];
    for (&x, &y) in a.iter().zip(b) {
        table[x][y] += 1;
    }
    let choose2 = |x: u64| (x * x.saturating_sub(1)) as f64 / 2.0;
    let sum_ij: f64 = table.iter().flatten().map(|&c| choose2(c)).sum();
    let sum_a: f64 = table
        .iter()
        .map(|row| choose2(row.iter().sum::<u64>()))
        .sum();
    let sum_b: f64 = (0..kb)
        .map(|j| choose2(table.iter().map(|row| row[j]).sum::<u64>()))
        .sum();
    let expected = sum_a * sum_b / choose2(n as u64);
    let max_index = (sum_a + sum_b) / 2.0;
    if (max_index - expected).abs() < f64::EPSILON {
        return 1.0;
    }
    (sum_ij - expected) / (max_index - expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn matrix(rows: Vec<Vec<f64>>) -> EmbeddingMatrix<f64> {
        let dimension = rows.first().map_or(0, Vec::len);
        EmbeddingMatrix {
            ids: (0..rows.len() as u64).map(GameId).collect(),
            rows,
            vocabulary: BTreeMap::new(),
            dimension,
        }
    }

    fn blob(center: &[f64], count: usize, spread: f64, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = derive_rng(seed, &[99]);
        (0..count)
            .map(|_| {
                center
                    .iter()
                    .map(|&c| c + (rng.random::<f64>() - 0.5) * spread)
                    .collect()
            })
            .collect()
    }

    #[test]
    fn k_points_k_clusters_zero_inertia() {
        let m = matrix(vec![vec![0.0, 0.0], vec![5.0, 0.0], vec![0.0, 5.0]]);
        let cfg = ClusteringConfig {
            k: 3,
            ..ClusteringConfig::default()
        };
        let a = kmeans(&m, &cfg).unwrap();
        assert_eq!(a.inertia, 0.0);
        let distinct: std::collections::BTreeSet<_> = a.labels.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn identical_points_error() {
        let m = matrix(vec![vec![1.0, 1.0]; 5]);
        let cfg = ClusteringConfig {
            k: 2,
            ..ClusteringConfig::default()
        };
        assert!(matches!(
            kmeans(&m, &cfg),
            Err(ClusteringError::TooFewDistinctPoints { distinct: 1, k: 2 })
        ));
    }

    #[test]
    fn two_blobs_recovered_and_inertia_is_recomputable() {
        let mut rows = blob(&[0.0; 8], 20, 0.5, 1);
        rows.extend(blob(&[10.0; 8], 20, 0.5, 2));
        let m = matrix(rows.clone());
        let cfg = ClusteringConfig {
            k: 2,
            ..ClusteringConfig::default()
        };
        let a = kmeans(&m, &cfg).unwrap();
        // Blob membership respected.
        for i in 0..20 {
            assert_eq!(a.labels[i], a.labels[0]);
            assert_eq!(a.labels[20 + i], a.labels[20]);
        }
        assert_ne!(a.labels[0], a.labels[20]);
        // Inertia equals direct recomputation from labels and centers.
        let direct: f64 = rows
            .iter()
            .zip(&a.labels)
            .map(|(r, &l)| sq_dist(r, &a.centers[l]))
            .sum();
        assert!((a.inertia - direct).abs() <= 1e-9 * direct.max(1.0));
    }

    #[test]
    fn silhouette_of_two_tight_pairs() {
        let rows = vec![
            vec![0.0, 0.0],
            vec![0.0, 0.1],
            vec![10.0, 0.0],
            vec![10.0, 0.1],
        ];
        let (mean, per_point) = silhouette(&rows, &[0, 0, 1, 1]).unwrap();
        assert!(mean > 0.95, "mean = {mean}");
        assert!(per_point.iter().all(|&s| (-1.0..=1.0).contains(&s)));
    }

    #[test]
    fn singleton_cluster_scores_zero() {
        let rows = vec![vec![0.0], vec![0.2], vec![9.0]];
        let (_, per_point) = silhouette(&rows, &[0, 0, 1]).unwrap();
        assert_eq!(per_point[2], 0.0);
    }

    #[test]
    fn silhouette_requires_two_clusters() {
        let rows = vec![vec![0.0], vec![1.0]];
        assert!(matches!(
            silhouette(&rows, &[0, 0]),
            Err(ClusteringError::TooFewClusters)
        ));
    }

    #[test]
    fn sweep_prefers_three_blobs_and_is_deterministic() {
        let mut rows = blob(&[0.0; 4], 12, 0.4, 3);
        rows.extend(blob(&[8.0, 0.0, 0.0, 0.0], 12, 0.4, 4));
        rows.extend(blob(&[0.0, 8.0, 0.0, 0.0], 12, 0.4, 5));
        let m = matrix(rows);
        let cfg = ClusteringConfig {
            k_min: 2,
            k_max: 6,
            ..ClusteringConfig::default()
        };
        let t1 = sweep(&m, &cfg).unwrap();
        assert_eq!(t1.best_silhouette_k(), Some(3));
        assert!(t1.inertia_violations.is_empty());
        let t2 = sweep(&m, &cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&t1).unwrap(),
            serde_json::to_string(&t2).unwrap()
        );
    }

    #[test]
    fn single_k_sweep_has_one_row() {
        let rows = blob(&[0.0; 3], 8, 1.0, 6);
        let m = matrix(rows);
        let cfg = ClusteringConfig {
            k_min: 2,
            k_max: 2,
            ..ClusteringConfig::default()
        };
        let table = sweep(&m, &cfg).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].k, 2);
    }

    #[test]
    fn sweep_bounds_checked() {
        let m = matrix(blob(&[0.0; 2], 5, 1.0, 7));
        let cfg = ClusteringConfig {
            k_min: 2,
            k_max: 5,
            ..ClusteringConfig::default()
        };
        assert!(matches!(
            sweep(&m, &cfg),
            Err(ClusteringError::SweepOutOfRange { k_max: 5, limit: 4 })
        ));
    }

    #[test]
    fn ari_of_identical_and_permuted_labelings() {
        let a = vec![0, 0, 1, 1, 2, 2];
        let b = vec![2, 2, 0, 0, 1, 1];
        assert_eq!(adjusted_rand_index(&a, &a), 1.0);
        assert_eq!(adjusted_rand_index(&a, &b), 1.0);
        let c = vec![0, 1, 0, 1, 0, 1];
        assert!(adjusted_rand_index(&a, &c) < 0.2);
    }
}
