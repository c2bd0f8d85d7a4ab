//! Per-cluster characterization: averaged structural metrics, TF-IDF
//! selected tags, tag-frequency data (the word-cloud input), and genre
//! distributions.

use crate::clustering::ClusterAssignment;
use crate::ids::GameId;
use crate::metrics::{PowerLawVerdict, StructuralProfile};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharacterizationError {
    #[error("no tag selection for assigned game {0}")]
    MissingSelection(GameId),
    #[error("coverage mismatch: {0}")]
    Coverage(String),
    #[error("catalog parse error at line {line}: {message}")]
    CatalogParse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Catalog entry for one game. Tags are normalized (lowercased, trimmed,
/// inner whitespace collapsed) and deduplicated; genres are kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameMeta {
    pub game_id: GameId,
    pub name: String,
    pub genres: Vec<String>,
    pub tags: Vec<String>,
}

fn normalize_tag(tag: &str) -> String {
    tag.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

impl GameMeta {
    pub fn new(game_id: GameId, name: &str, genres: Vec<String>, tags: Vec<String>) -> Self {
        let mut seen = BTreeSet::new();
        let tags = tags
            .iter()
            .map(|t| normalize_tag(t))
            .filter(|t| !t.is_empty() && seen.insert(t.clone()))
            .collect();
        GameMeta {
            game_id,
            name: name.to_string(),
            genres,
            tags,
        }
    }
}

/// Load a JSON-lines catalog (`{game_id, name, genres, tags}` per line),
/// normalizing tags on the way in.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<GameMeta>, CharacterizationError> {
    let file = std::fs::File::open(path)?;
    let mut catalog = Vec::new();
    for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: GameMeta =
            serde_json::from_str(&line).map_err(|e| CharacterizationError::CatalogParse {
                line: i + 1,
                message: e.to_string(),
            })?;
        catalog.push(GameMeta::new(raw.game_id, &raw.name, raw.genres, raw.tags));
    }
    Ok(catalog)
}

/// TF-IDF weight of one tag within one game's tag list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TagScore<T> {
    pub tag: String,
    pub tf: T,
    pub idf: T,
    pub score: T,
}

/// Most characterizing tags per game: `tf = 1/|tags|` (tags are unique
/// within a game), `idf = ln(N/df)`, ranked by `tf·idf` descending with
/// ties broken by tag text, cut to `top_k`.
pub fn tfidf_select<T: Real>(
    catalog: &[GameMeta],
    top_k: usize,
) -> BTreeMap<GameId, Vec<TagScore<T>>> {
    let n = catalog.len();
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for game in catalog {
        for tag in &game.tags {
            *df.entry(tag).or_insert(0) += 1;
        }
    }
    catalog
        .iter()
        .map(|game| {
            let mut scores: Vec<TagScore<T>> = game
                .tags
                .iter()
                .map(|tag| {
                    let tf = T::of(game.tags.len()).recip();
                    let idf = (T::of(n) / T::of(df[tag.as_str()])).ln();
                    TagScore {
                        tag: tag.clone(),
                        tf,
                        idf,
                        score: tf * idf,
                    }
                })
                .collect();
            scores.sort_by(|a, b| {
                b.score
                    .partial_cmp(&a.score)
                    .expect("finite scores")
                    .then_with(|| a.tag.cmp(&b.tag))
            });
            scores.truncate(top_k);
            (game.game_id, scores)
        })
        .collect()
}

/// Count each selected tag across a cluster's member games. Every cluster
/// index up to the maximum label gets an entry, so unused indices map to an
/// empty count table.
pub fn cluster_tag_frequencies<T>(
    assignment: &ClusterAssignment<T>,
    selections: &BTreeMap<GameId, Vec<String>>,
) -> Result<BTreeMap<usize, BTreeMap<String, usize>>, CharacterizationError> {
    let k = assignment.labels.iter().max().map_or(0, |&l| l + 1);
    let mut freq: BTreeMap<usize, BTreeMap<String, usize>> =
        (0..k).map(|c| (c, BTreeMap::new())).collect();
    for (&id, &label) in assignment.ids.iter().zip(&assignment.labels) {
        let tags = selections
            .get(&id)
            .ok_or(CharacterizationError::MissingSelection(id))?;
        let table = freq.entry(label).or_default();
        for tag in tags {
            *table.entry(tag.clone()).or_insert(0) += 1;
        }
    }
    Ok(freq)
}

/// Genre occurrence fractions per cluster: occurrences of a genre among
/// member games over all genre occurrences in the cluster.
pub fn genre_distribution<T: Real>(
    assignment: &ClusterAssignment<T>,
    catalog: &[GameMeta],
) -> BTreeMap<usize, BTreeMap<String, T>> {
    let by_id: BTreeMap<GameId, &GameMeta> = catalog.iter().map(|g| (g.game_id, g)).collect();
    let k = assignment.labels.iter().max().map_or(0, |&l| l + 1);
    let mut counts: BTreeMap<usize, BTreeMap<String, usize>> =
        (0..k).map(|c| (c, BTreeMap::new())).collect();
    for (&id, &label) in assignment.ids.iter().zip(&assignment.labels) {
        if let Some(game) = by_id.get(&id) {
            let table = counts.entry(label).or_default();
            for genre in &game.genres {
                *table.entry(genre.clone()).or_insert(0) += 1;
            }
        }
    }
    counts
        .into_iter()
        .map(|(c, table)| {
            let total: usize = table.values().sum();
            let fractions = table
                .into_iter()
                .map(|(genre, count)| (genre, T::of(count) / T::of(total)))
                .collect();
            (c, fractions)
        })
        .collect()
}

/// Field-wise means of member profiles; optional fields average over the
/// members where they are defined and stay `None` when no member defines
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterAverages<T> {
    pub n_nodes: T,
    pub n_edges: T,
    pub density: Option<T>,
    pub mean_degree: T,
    pub std_degree: T,
    pub assortativity: Option<T>,
    pub degree_centralization: Option<T>,
    pub betweenness_centralization: Option<T>,
    pub avg_clustering: T,
    pub n_components: T,
    pub lcc_fraction: T,
    pub modularity: Option<T>,
    /// Share of members whose degree distribution got a power-law verdict.
    pub pct_power_law: T,
}

/// One cluster's characterization row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterProfile<T> {
    pub cluster: usize,
    pub size: usize,
    pub avg_metrics: ClusterAverages<T>,
    pub tag_frequencies: BTreeMap<String, usize>,
    pub genre_distribution: BTreeMap<String, T>,
    pub members: Vec<String>,
}

fn mean<T: Real>(values: impl Iterator<Item = T>) -> Option<T> {
    let mut sum = T::zero();
    let mut count = 0usize;
    for v in values {
        sum += v;
        count += 1;
    }
    (count > 0).then(|| sum / T::of(count))
}

/// Aggregate per-cluster profiles. `assignment`, `profiles`, `catalog`, and
/// `selections` must cover the assigned game set.
pub fn build_cluster_profiles<T: Real>(
    assignment: &ClusterAssignment<T>,
    profiles: &BTreeMap<GameId, StructuralProfile<T>>,
    catalog: &[GameMeta],
    selections: &BTreeMap<GameId, Vec<String>>,
) -> Result<Vec<ClusterProfile<T>>, CharacterizationError> {
    let catalog_ids: BTreeSet<GameId> = catalog.iter().map(|g| g.game_id).collect();
    let mut missing: Vec<String> = Vec::new();
    for &id in &assignment.ids {
        if !profiles.contains_key(&id) {
            missing.push(format!("{id} (profiles)"));
        }
        if !catalog_ids.contains(&id) {
            missing.push(format!("{id} (catalog)"));
        }
        if !selections.contains_key(&id) {
            missing.push(format!("{id} (selections)"));
        }
    }
    if !missing.is_empty() {
        return Err(CharacterizationError::Coverage(missing.join(", ")));
    }

    let names: BTreeMap<GameId, &str> = catalog
        .iter()
        .map(|g| (g.game_id, g.name.as_str()))
        .collect();
    let tag_freq = cluster_tag_frequencies(assignment, selections)?;
    let genres = genre_distribution(assignment, catalog);

    let mut members_of: BTreeMap<usize, Vec<GameId>> = BTreeMap::new();
    for (&id, &label) in assignment.ids.iter().zip(&assignment.labels) {
        members_of.entry(label).or_default().push(id);
    }

    let mut out = Vec::new();
    for (cluster, mut members) in members_of {
        members.sort_unstable();
        let rows: Vec<&StructuralProfile<T>> = members.iter().map(|id| &profiles[id]).collect();
        let size = rows.len();
        let plain = |f: &dyn Fn(&StructuralProfile<T>) -> T| {
            mean(rows.iter().map(|r| f(r))).expect("non-empty cluster")
        };
        let optional = |f: &dyn Fn(&StructuralProfile<T>) -> Option<T>| {
            mean(rows.iter().filter_map(|r| f(r)))
        };
        let power_law_members = rows
            .iter()
            .filter(|r| r.powerlaw.verdict == PowerLawVerdict::PowerLaw)
            .count();
        let avg_metrics = ClusterAverages {
            n_nodes: plain(&|r| T::of(r.n_nodes)),
            n_edges: plain(&|r| T::of(r.n_edges)),
            density: optional(&|r| r.density),
            mean_degree: plain(&|r| r.mean_degree),
            std_degree: plain(&|r| r.std_degree),
            assortativity: optional(&|r| r.assortativity),
            degree_centralization: optional(&|r| r.degree_centralization),
            betweenness_centralization: optional(&|r| r.betweenness_centralization),
            avg_clustering: plain(&|r| r.avg_clustering),
            n_components: plain(&|r| T::of(r.n_components)),
            lcc_fraction: plain(&|r| r.lcc_fraction),
            modularity: optional(&|r| r.modularity),
            pct_power_law: T::of(power_law_members) / T::of(size),
        };
        out.push(ClusterProfile {
            cluster,
            size,
            avg_metrics,
            tag_frequencies: tag_freq.get(&cluster).cloned().unwrap_or_default(),
            genre_distribution: genres.get(&cluster).cloned().unwrap_or_default(),
            members: members.iter().map(|id| names[id].to_string()).collect(),
        });
    }
    Ok(out)
}
