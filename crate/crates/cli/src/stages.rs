//! Stage runners. Every stage validates its inputs by content hash against
//! the producing stage's manifest, writes its outputs atomically, and
//! records a manifest of config hash, input hashes, and output hashes, so a
//! finished run is reproducible and resumable stage by stage.

use crate::config::PipelineConfig;
use crate::errors::CliError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use steamnet_core::characterization::{
    build_cluster_profiles, load_catalog, tfidf_select, ClusterProfile,
};
use steamnet_core::clustering::{kmeans, sweep, ClusterAssignment, ClusteringConfig};
use steamnet_core::embedding::{train_with_loss, wl_document, EmbeddingMatrix, WlDocument};
use steamnet_core::graph::Graph;
use steamnet_core::ids::{GameId, PlayerId};
use steamnet_core::metrics::{profile, MetricsConfig};
use steamnet_core::rng::derive_seed;
use steamnet_core::sampling::{
    active_players, game_subgraph, prune_inactive, snowball_build, top_games, ActivityLog,
    SnowballStats,
};
use steamnet_core::{Profile, Scalar};

const METRICS_TAG: u64 = 0x6d657472; // "metr"
const EMBED_TAG: u64 = 0x656d6264; // "embd"
const CLUSTER_TAG: u64 = 0x636c7573; // "clus"

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Sample,
    Subgraphs,
    Metrics,
    Embed,
    Cluster,
    Characterize,
    Report,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::Sample,
        Stage::Subgraphs,
        Stage::Metrics,
        Stage::Embed,
        Stage::Cluster,
        Stage::Characterize,
        Stage::Report,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Stage::Sample => "sample",
            Stage::Subgraphs => "subgraphs",
            Stage::Metrics => "metrics",
            Stage::Embed => "embed",
            Stage::Cluster => "cluster",
            Stage::Characterize => "characterize",
            Stage::Report => "report",
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn file_sha256(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(sha256_hex(&bytes))
}

/// Write through a temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let parent = path
        .parent()
        .ok_or_else(|| CliError::Data(format!("no parent directory for {}", path.display())))?;
    std::fs::create_dir_all(parent)?;
    let tmp = parent.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact")
    ));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Per-stage record of what went in and what came out.
#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub stage: String,
    pub tool_version: String,
    pub seed: u64,
    pub config_hash: String,
    /// External inputs and upstream artifacts, label → sha256.
    pub inputs: BTreeMap<String, String>,
    /// This stage's artifacts, relative path → sha256.
    pub outputs: BTreeMap<String, String>,
}

pub struct StageWriter<'a> {
    cfg: &'a PipelineConfig,
    stage: Stage,
    dir: PathBuf,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl<'a> StageWriter<'a> {
    pub(crate) fn new(cfg: &'a PipelineConfig, stage: Stage) -> Self {
        StageWriter {
            cfg,
            stage,
            dir: cfg.out_dir.join(stage.name()),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub(crate) fn record_input(&mut self, label: &str, path: &Path) -> Result<(), CliError> {
        self.inputs.insert(label.to_string(), file_sha256(path)?);
        Ok(())
    }

    pub(crate) fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(rel);
        atomic_write(&path, bytes)?;
        self.outputs.insert(rel.to_string(), sha256_hex(bytes));
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<(), CliError> {
        let manifest = Manifest {
            stage: self.stage.name().to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: self.cfg.seed,
            config_hash: self.cfg.content_hash(),
            inputs: self.inputs,
            outputs: self.outputs,
        };
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        atomic_write(&self.dir.join("manifest.json"), &bytes)?;
        Ok(())
    }
}

fn load_manifest(cfg: &PipelineConfig, stage: Stage) -> Result<Manifest, CliError> {
    let path = cfg.out_dir.join(stage.name()).join("manifest.json");
    let bytes = std::fs::read(&path).map_err(|_| {
        CliError::Data(format!(
            "missing manifest for stage '{}': run `steamnet {}` first",
            stage.name(),
            stage.name()
        ))
    })?;
    Ok(serde_json::from_slice(&bytes)?)
}

/// Resolve an upstream artifact, verifying its hash against the producing
/// stage's manifest.
pub fn require_artifact(
    cfg: &PipelineConfig,
    stage: Stage,
    rel: &str,
) -> Result<PathBuf, CliError> {
    let manifest = load_manifest(cfg, stage)?;
    let expected = manifest.outputs.get(rel).ok_or_else(|| {
        CliError::Data(format!(
            "stage '{}' did not produce '{rel}': rerun `steamnet {}`",
            stage.name(),
            stage.name()
        ))
    })?;
    let path = cfg.out_dir.join(stage.name()).join(rel);
    let actual = file_sha256(&path)?;
    if &actual != expected {
        return Err(CliError::Data(format!(
            "artifact {} was modified after stage '{}' ran (hash mismatch); rerun `steamnet {}`",
            path.display(),
            stage.name(),
            stage.name()
        )));
    }
    Ok(path)
}

// ---------------------------------------------------------------------------
// Serialized artifact shapes
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct SampleStats {
    pub snowball: Option<SnowballStats>,
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
    pub nodes_before_pruning: usize,
    pub edges_before_pruning: usize,
    pub active_players: usize,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub game_id: GameId,
    pub n_nodes: usize,
    pub n_edges: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub games: Vec<CorpusEntry>,
}

/// Subgraph artifact; unlike an edge list this keeps isolated nodes.
#[derive(Debug, Serialize, Deserialize)]
pub struct StoredGraph {
    pub game_id: GameId,
    pub nodes: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
}

impl StoredGraph {
    pub fn from_graph(game_id: GameId, g: &Graph) -> Self {
        StoredGraph {
            game_id,
            nodes: g.nodes().iter().map(|id| id.0).collect(),
            edges: g.edges().map(|(a, b)| (a.0, b.0)).collect(),
        }
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_parts(
            self.nodes.iter().copied().map(PlayerId),
            self.edges
                .iter()
                .map(|&(a, b)| (PlayerId(a), PlayerId(b))),
        )
        .0
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProfileRow {
    pub game_id: GameId,
    #[serde(flatten)]
    pub profile: Profile,
}

// ---------------------------------------------------------------------------
// Stage implementations
// ---------------------------------------------------------------------------

pub fn run_stage(cfg: &PipelineConfig, stage: Stage) -> Result<(), CliError> {
    log::info!("stage {} starting", stage.name());
    match stage {
        Stage::Sample => run_sample(cfg),
        Stage::Subgraphs => run_subgraphs(cfg),
        Stage::Metrics => run_metrics(cfg),
        Stage::Embed => run_embed(cfg),
        Stage::Cluster => run_cluster(cfg),
        Stage::Characterize => run_characterize(cfg),
        Stage::Report => crate::report::run_report(cfg),
    }
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<(), CliError> {
    for stage in Stage::ALL {
        run_stage(cfg, stage)?;
    }
    Ok(())
}

fn read_seeds(path: &Path) -> Result<std::collections::BTreeSet<PlayerId>, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Data(format!("cannot read seeds {}: {e}", path.display())))?;
    let ids: Vec<u64> = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Data(format!("bad seeds file {}: {e}", path.display())))?;
    Ok(ids.into_iter().map(PlayerId).collect())
}

fn run_sample(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Sample);
    writer.record_input("activity", &cfg.inputs.activity)?;
    let log = ActivityLog::read_csv_path(&cfg.inputs.activity)?;

    let (graph, tally, snowball) = if let Some(edge_list) = &cfg.inputs.edge_list {
        writer.record_input("edge_list", edge_list)?;
        let (g, tally) = Graph::read_edge_list(edge_list)?;
        (g, tally, None)
    } else {
        let root = cfg
            .inputs
            .fixture_root
            .as_ref()
            .expect("validated: fixture_root present");
        let seeds_path = cfg.inputs.seeds.as_ref().expect("validated: seeds present");
        writer.record_input("seeds", seeds_path)?;
        let seeds = read_seeds(seeds_path)?;
        let provider = steamnet_client::FixtureProvider::new(root.clone());
        let (g, stats) = match snowball_build(&provider, &seeds) {
            Ok(done) => done,
            Err(e @ steamnet_core::sampling::SamplingError::Aborted { .. }) => {
                // Persist the pending frontier so a rerun can resume from
                // the provider cache.
                if let steamnet_core::sampling::SamplingError::Aborted { pending, .. } = &e {
                    let bytes = serde_json::to_vec_pretty(
                        &pending.iter().map(|p| p.0).collect::<Vec<u64>>(),
                    )?;
                    atomic_write(&cfg.out_dir.join("sample").join("frontier.json"), &bytes)?;
                }
                return Err(e.into());
            }
            Err(e) => return Err(e.into()),
        };
        (g, Default::default(), Some(stats))
    };

    let active = active_players(&log, &cfg.window);
    let pruned = prune_inactive(&graph, &active);

    let mut edges_bytes = Vec::new();
    pruned
        .write_edge_list(&mut edges_bytes)
        .map_err(CliError::from)?;
    writer.write("graph.edges", &edges_bytes)?;

    let stats = SampleStats {
        snowball,
        self_loops_dropped: tally.self_loops,
        duplicate_edges_dropped: tally.duplicates,
        nodes_before_pruning: graph.node_count(),
        edges_before_pruning: graph.edge_count(),
        active_players: active.len(),
        nodes: pruned.node_count(),
        edges: pruned.edge_count(),
    };
    let mut bytes = serde_json::to_vec_pretty(&stats)?;
    bytes.push(b'\n');
    writer.write("stats.json", &bytes)?;
    writer.finish()
}

fn run_subgraphs(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Subgraphs);
    let edges_path = require_artifact(cfg, Stage::Sample, "graph.edges")?;
    writer.record_input("sample/graph.edges", &edges_path)?;
    writer.record_input("activity", &cfg.inputs.activity)?;

    let (graph, _) = Graph::read_edge_list(&edges_path)?;
    let log = ActivityLog::read_csv_path(&cfg.inputs.activity)?;
    let games = top_games(&graph, &log, &cfg.window, cfg.top_n, cfg.min_nodes);
    if games.is_empty() {
        return Err(CliError::Data(format!(
            "no game reaches min_nodes = {}; corpus is empty",
            cfg.min_nodes
        )));
    }

    let mut entries = Vec::with_capacity(games.len());
    for &game in &games {
        let sub = game_subgraph(&graph, &log, &cfg.window, game);
        entries.push(CorpusEntry {
            game_id: game,
            n_nodes: sub.node_count(),
            n_edges: sub.edge_count(),
        });
        let stored = StoredGraph::from_graph(game, &sub);
        let mut bytes = serde_json::to_vec(&stored)?;
        bytes.push(b'\n');
        writer.write(&format!("games/{game}.json"), &bytes)?;
    }
    let mut bytes = serde_json::to_vec_pretty(&CorpusIndex { games: entries })?;
    bytes.push(b'\n');
    writer.write("corpus.json", &bytes)?;
    writer.finish()
}

pub fn load_corpus_index(cfg: &PipelineConfig) -> Result<CorpusIndex, CliError> {
    let path = require_artifact(cfg, Stage::Subgraphs, "corpus.json")?;
    Ok(serde_json::from_slice(&std::fs::read(path)?)?)
}

fn load_subgraph(cfg: &PipelineConfig, game: GameId) -> Result<Graph, CliError> {
    let path = require_artifact(cfg, Stage::Subgraphs, &format!("games/{game}.json"))?;
    let stored: StoredGraph = serde_json::from_slice(&std::fs::read(path)?)?;
    Ok(stored.to_graph())
}

fn run_metrics(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Metrics);
    let index = load_corpus_index(cfg)?;
    writer.record_input(
        "subgraphs/corpus.json",
        &cfg.out_dir.join("subgraphs").join("corpus.json"),
    )?;

    let graphs: Vec<(GameId, Graph)> = index
        .games
        .iter()
        .map(|e| Ok((e.game_id, load_subgraph(cfg, e.game_id)?)))
        .collect::<Result<_, CliError>>()?;

    let rows: Vec<ProfileRow> = graphs
        .par_iter()
        .map(|(game_id, g)| {
            let mcfg = MetricsConfig {
                seed: derive_seed(cfg.seed, &[METRICS_TAG, game_id.0]),
                bootstrap_replicates: cfg.bootstrap_replicates,
            };
            ProfileRow {
                game_id: *game_id,
                profile: profile::<Scalar>(g, &mcfg),
            }
        })
        .collect();

    let mut jsonl = String::new();
    for row in &rows {
        jsonl.push_str(&serde_json::to_string(row)?);
        jsonl.push('\n');
    }
    writer.write("profiles.jsonl", jsonl.as_bytes())?;
    writer.write("profiles.csv", profiles_csv(&rows).as_bytes())?;
    writer.finish()
}

fn opt_cell(v: Option<Scalar>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Per-game CSV with the cluster-table column order; the power-law column
/// carries the per-game verdict.
fn profiles_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from(
        "game_id,nodes,density,mean_deg,std_deg,avg_clust,n_cc,pct_lcc,modularity,assortativity,powerlaw,deg_centr,betw_centr\n",
    );
    for row in rows {
        let p = &row.profile;
        let verdict = serde_json::to_value(p.powerlaw.verdict)
            .expect("verdict serializes")
            .as_str()
            .expect("verdict is a string")
            .to_string();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.game_id,
            p.n_nodes,
            opt_cell(p.density),
            p.mean_degree,
            p.std_degree,
            p.avg_clustering,
            p.n_components,
            p.lcc_fraction,
            opt_cell(p.modularity),
            opt_cell(p.assortativity),
            verdict,
            opt_cell(p.degree_centralization),
            opt_cell(p.betweenness_centralization),
        );
    }
    out
}

pub fn load_profiles(cfg: &PipelineConfig) -> Result<BTreeMap<GameId, Profile>, CliError> {
    let path = require_artifact(cfg, Stage::Metrics, "profiles.jsonl")?;
    let mut out = BTreeMap::new();
    for line in std::fs::read_to_string(path)?.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row: ProfileRow = serde_json::from_str(line)?;
        out.insert(row.game_id, row.profile);
    }
    Ok(out)
}

fn run_embed(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Embed);
    let index = load_corpus_index(cfg)?;
    writer.record_input(
        "subgraphs/corpus.json",
        &cfg.out_dir.join("subgraphs").join("corpus.json"),
    )?;

    let docs: Vec<WlDocument> = index
        .games
        .iter()
        .map(|e| {
            let g = load_subgraph(cfg, e.game_id)?;
            Ok(wl_document(&g, e.game_id, cfg.embedding.wl_iterations))
        })
        .collect::<Result<_, CliError>>()?;

    let mut jsonl = String::new();
    for doc in &docs {
        jsonl.push_str(&serde_json::to_string(doc)?);
        jsonl.push('\n');
    }
    writer.write("wl_documents.jsonl", jsonl.as_bytes())?;

    let ecfg = steamnet_core::embedding::EmbeddingConfig {
        seed: derive_seed(cfg.seed, &[EMBED_TAG]),
        ..cfg.embedding.clone()
    };
    let (matrix, losses): (EmbeddingMatrix<Scalar>, Vec<Scalar>) =
        train_with_loss(&docs, &ecfg)?;

    let mut csv_bytes = Vec::new();
    matrix.write_csv(&mut csv_bytes).map_err(CliError::from)?;
    writer.write("embeddings.csv", &csv_bytes)?;

    let mut loss_csv = String::from("epoch,mean_loss\n");
    for (epoch, loss) in losses.iter().enumerate() {
        let _ = writeln!(loss_csv, "{epoch},{loss}");
    }
    writer.write("loss.csv", loss_csv.as_bytes())?;
    writer.finish()
}

pub fn load_embeddings(cfg: &PipelineConfig) -> Result<EmbeddingMatrix<Scalar>, CliError> {
    let path = require_artifact(cfg, Stage::Embed, "embeddings.csv")?;
    let file = std::fs::File::open(path)?;
    Ok(EmbeddingMatrix::read_csv(std::io::BufReader::new(file))?)
}

fn run_cluster(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Cluster);
    let matrix = load_embeddings(cfg)?;
    writer.record_input(
        "embed/embeddings.csv",
        &cfg.out_dir.join("embed").join("embeddings.csv"),
    )?;

    let ccfg = ClusteringConfig {
        seed: derive_seed(cfg.seed, &[CLUSTER_TAG]),
        ..cfg.clustering.clone()
    };
    let table = sweep(&matrix, &ccfg)?;
    let mut sweep_csv = String::from("k,inertia,silhouette\n");
    for row in &table.rows {
        let _ = writeln!(sweep_csv, "{},{},{}", row.k, row.inertia, row.silhouette);
    }
    writer.write("sweep.csv", sweep_csv.as_bytes())?;
    if !table.inertia_violations.is_empty() {
        log::warn!(
            "inertia increased at k = {:?} despite restarts",
            table.inertia_violations
        );
    }

    let assignment = kmeans(&matrix, &ccfg)?;
    let mut assign_csv = String::from("graph_id,cluster\n");
    for (id, label) in assignment.ids.iter().zip(&assignment.labels) {
        let _ = writeln!(assign_csv, "{id},{label}");
    }
    writer.write("assignments.csv", assign_csv.as_bytes())?;

    #[derive(Serialize)]
    struct KmeansSummary<'a> {
        k: usize,
        inertia: Scalar,
        centers: &'a [Vec<Scalar>],
        inertia_violations: &'a [usize],
    }
    let mut bytes = serde_json::to_vec_pretty(&KmeansSummary {
        k: cfg.clustering.k,
        inertia: assignment.inertia,
        centers: &assignment.centers,
        inertia_violations: &table.inertia_violations,
    })?;
    bytes.push(b'\n');
    writer.write("kmeans.json", &bytes)?;
    writer.finish()
}

pub fn load_assignment(cfg: &PipelineConfig) -> Result<ClusterAssignment<Scalar>, CliError> {
    let path = require_artifact(cfg, Stage::Cluster, "assignments.csv")?;
    let text = std::fs::read_to_string(path)?;
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let (id, label) = line.split_once(',').ok_or_else(|| {
            CliError::Data(format!("assignments.csv line {}: expected two fields", i + 1))
        })?;
        ids.push(GameId(id.parse().map_err(|e| {
            CliError::Data(format!("assignments.csv line {}: bad id: {e}", i + 1))
        })?));
        labels.push(label.parse().map_err(|e| {
            CliError::Data(format!("assignments.csv line {}: bad cluster: {e}", i + 1))
        })?);
    }
    Ok(ClusterAssignment {
        ids,
        labels,
        centers: Vec::new(),
        inertia: 0.0,
    })
}

fn run_characterize(cfg: &PipelineConfig) -> Result<(), CliError> {
    let mut writer = StageWriter::new(cfg, Stage::Characterize);
    let assignment = load_assignment(cfg)?;
    let profiles = load_profiles(cfg)?;
    writer.record_input(
        "cluster/assignments.csv",
        &cfg.out_dir.join("cluster").join("assignments.csv"),
    )?;
    writer.record_input(
        "metrics/profiles.jsonl",
        &cfg.out_dir.join("metrics").join("profiles.jsonl"),
    )?;
    writer.record_input("catalog", &cfg.inputs.catalog)?;

    let catalog = load_catalog(&cfg.inputs.catalog)?;
    let selections_scored = tfidf_select::<Scalar>(&catalog, cfg.top_k_tags);
    let selections: BTreeMap<GameId, Vec<String>> = selections_scored
        .iter()
        .map(|(id, scores)| (*id, scores.iter().map(|s| s.tag.clone()).collect()))
        .collect();

    let cluster_profiles = build_cluster_profiles(&assignment, &profiles, &catalog, &selections)?;

    let mut bytes = serde_json::to_vec_pretty(&cluster_profiles)?;
    bytes.push(b'\n');
    writer.write("cluster_profiles.json", &bytes)?;
    writer.write(
        "cluster_profiles.csv",
        cluster_profiles_csv(&cluster_profiles).as_bytes(),
    )?;

    let frequencies: BTreeMap<usize, &BTreeMap<String, usize>> = cluster_profiles
        .iter()
        .map(|c| (c.cluster, &c.tag_frequencies))
        .collect();
    let mut bytes = serde_json::to_vec_pretty(&frequencies)?;
    bytes.push(b'\n');
    writer.write("tag_frequencies.json", &bytes)?;

    let mut bytes = serde_json::to_vec_pretty(&selections)?;
    bytes.push(b'\n');
    writer.write("tag_selections.json", &bytes)?;
    writer.finish()
}

/// Cluster rows in the averaged-metrics table column order.
pub fn cluster_profiles_csv(rows: &[ClusterProfile<Scalar>]) -> String {
    let mut out = String::from(
        "cluster,size,nodes,density,mean_deg,std_deg,avg_clust,n_cc,pct_lcc,modularity,assortativity,pct_pl,deg_centr,betw_centr\n",
    );
    for row in rows {
        let a = &row.avg_metrics;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.cluster,
            row.size,
            a.n_nodes,
            opt_cell(a.density),
            a.mean_degree,
            a.std_degree,
            a.avg_clustering,
            a.n_components,
            a.lcc_fraction,
            opt_cell(a.modularity),
            opt_cell(a.assortativity),
            a.pct_power_law,
            opt_cell(a.degree_centralization),
            opt_cell(a.betweenness_centralization),
        );
    }
    out
}

pub fn load_cluster_profiles(
    cfg: &PipelineConfig,
) -> Result<Vec<ClusterProfile<Scalar>>, CliError> {
    let path = require_artifact(cfg, Stage::Characterize, "cluster_profiles.json")?;
    Ok(serde_json::from_slice(&std::fs::read(path)?)?)
}
