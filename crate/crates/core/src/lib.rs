//! Analysis toolkit for per-game friendship networks.
//!
//! The pipeline goes: crawl or load a player friendship graph, induce one
//! subgraph per game from player activity, compute a structural profile per
//! subgraph, embed each subgraph as a fixed-length vector, cluster the
//! vectors, and characterize each cluster with averaged metrics, TF-IDF
//! selected tags, and genre distributions.
//!
//! All numeric routines are generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the crate-root aliases pin the `f64` instantiation used
//! by the command-line pipeline.

pub mod characterization;
pub mod clustering;
pub mod embedding;
pub mod graph;
pub mod hash;
pub mod ids;
pub mod metrics;
pub mod rng;
pub mod sampling;
pub mod scalar;

pub use graph::Graph;
pub use ids::{GameId, PlayerId};
pub use scalar::Real;

/// Scalar type used by the end-to-end pipeline.
pub type Scalar = f64;

/// [`metrics::StructuralProfile`] at the pipeline scalar.
pub type Profile = metrics::StructuralProfile<Scalar>;
/// [`metrics::PowerLawFit`] at the pipeline scalar.
pub type PowerLaw = metrics::PowerLawFit<Scalar>;
/// [`embedding::EmbeddingMatrix`] at the pipeline scalar.
pub type Embedding = embedding::EmbeddingMatrix<Scalar>;
/// [`clustering::ClusterAssignment`] at the pipeline scalar.
pub type Assignment = clustering::ClusterAssignment<Scalar>;
/// [`characterization::ClusterProfile`] at the pipeline scalar.
pub type ClusterSummary = characterization::ClusterProfile<Scalar>;
