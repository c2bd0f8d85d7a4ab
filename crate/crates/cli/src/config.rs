//! Pipeline configuration: one JSON file drives every stage.

use crate::errors::CliError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use steamnet_core::clustering::ClusteringConfig;
use steamnet_core::embedding::EmbeddingConfig;
use steamnet_core::sampling::ObservationWindow;

/// Input artifact locations. The base friendship graph comes either from a
/// prebuilt edge list or from a crawl over the fixture provider (seeds
/// required).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputPaths {
    #[serde(default)]
    pub edge_list: Option<PathBuf>,
    #[serde(default)]
    pub fixture_root: Option<PathBuf>,
    #[serde(default)]
    pub seeds: Option<PathBuf>,
    pub activity: PathBuf,
    pub catalog: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub inputs: InputPaths,
    pub window: ObservationWindow,
    /// Number of top games to keep.
    pub top_n: usize,
    /// Minimum induced-subgraph size for a game to qualify.
    pub min_nodes: usize,
    /// Selected tags per game.
    pub top_k_tags: usize,
    /// Power-law goodness-of-fit bootstrap replicates.
    pub bootstrap_replicates: usize,
    pub embedding: EmbeddingConfig,
    pub clustering: ClusteringConfig,
    pub out_dir: PathBuf,
    /// Master seed; per-stage streams are derived from it, overriding the
    /// seed fields of the embedding and clustering sections.
    pub seed: u64,
    #[serde(default)]
    pub jobs: Option<usize>,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: PipelineConfig = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        // Paths are relative to the config file location.
        let base = path.parent().unwrap_or(Path::new("."));
        let anchor = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&p);
            }
        };
        if let Some(p) = cfg.inputs.edge_list.as_mut() {
            anchor(p);
        }
        if let Some(p) = cfg.inputs.fixture_root.as_mut() {
            anchor(p);
        }
        if let Some(p) = cfg.inputs.seeds.as_mut() {
            anchor(p);
        }
        anchor(&mut cfg.inputs.activity);
        anchor(&mut cfg.inputs.catalog);
        anchor(&mut cfg.out_dir);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.inputs.edge_list.is_none() && self.inputs.fixture_root.is_none() {
            return Err(CliError::Usage(
                "config needs inputs.edge_list or inputs.fixture_root".into(),
            ));
        }
        if self.inputs.fixture_root.is_some() && self.inputs.seeds.is_none() {
            return Err(CliError::Usage(
                "crawling a fixture needs inputs.seeds (a JSON array of player ids)".into(),
            ));
        }
        if self.top_n == 0 {
            return Err(CliError::Usage("top_n must be at least 1".into()));
        }
        if self.embedding.dimension == 0 {
            return Err(CliError::Usage("embedding.dimension must be at least 1".into()));
        }
        if self.clustering.k < 2 {
            return Err(CliError::Usage("clustering.k must be at least 2".into()));
        }
        Ok(())
    }

    /// Stable hash of the semantic configuration, recorded in every
    /// manifest. Paths and parallelism are excluded: input content is
    /// pinned separately by per-file hashes, and worker count must never
    /// change a result.
    pub fn content_hash(&self) -> String {
        #[derive(Serialize)]
        struct Semantic<'a> {
            window: &'a ObservationWindow,
            top_n: usize,
            min_nodes: usize,
            top_k_tags: usize,
            bootstrap_replicates: usize,
            embedding: &'a EmbeddingConfig,
            clustering: &'a ClusteringConfig,
            seed: u64,
        }
        let semantic = Semantic {
            window: &self.window,
            top_n: self.top_n,
            min_nodes: self.min_nodes,
            top_k_tags: self.top_k_tags,
            bootstrap_replicates: self.bootstrap_replicates,
            embedding: &self.embedding,
            clustering: &self.clustering,
            seed: self.seed,
        };
        let canonical = serde_json::to_vec(&semantic).expect("config serializes");
        crate::stages::sha256_hex(&canonical)
    }
}
