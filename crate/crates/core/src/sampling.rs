//! Data-set construction: snowball crawl over an abstract friend provider,
//! activity-window filtering, and selection of the most-played games.
//!
//! The crawl runs four steps: expand the seed set with its friends, restrict
//! to the largest connected component, expand the component members'
//! friends, then a closure pass that fetches the friends of the nodes just
//! added but only keeps edges between already-known nodes. Private profiles
//! discovered along the way are dropped, with their edges, when the graph is
//! finalized.

use crate::graph::Graph;
use crate::ids::{GameId, PlayerId};
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;
use thiserror::Error;

/// Friend-list answer for one player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FriendList {
    Private,
    Public(Vec<PlayerId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    Public,
    Private,
}

#[derive(Debug, Error)]
pub enum ProviderError {
    /// Network-style failure that survived the provider's retry policy.
    #[error("transient provider failure: {0}")]
    Transient(String),
    /// Malformed or inconsistent payload.
    #[error("provider data error: {0}")]
    Data(String),
}

/// Source of friend lists. Implementations must answer symmetrically in
/// fixtures and be cache-stable within a run; retries are the provider's
/// concern, so any error reaching the crawl aborts it.
pub trait FriendProvider {
    fn friends_of(&self, player: PlayerId) -> Result<FriendList, ProviderError>;

    fn visibility(&self, player: PlayerId) -> Result<Visibility, ProviderError> {
        Ok(match self.friends_of(player)? {
            FriendList::Private => Visibility::Private,
            FriendList::Public(_) => Visibility::Public,
        })
    }
}

/// Per-(player, game, day) playtime records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityRecord {
    pub player: PlayerId,
    pub game: GameId,
    pub day: NaiveDate,
    pub playtime_minutes: u64,
}

/// Collection of activity records with at most one record per
/// (player, game, day).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActivityLog {
    records: Vec<ActivityRecord>,
}

impl ActivityLog {
    pub fn from_records(mut records: Vec<ActivityRecord>) -> Result<Self, SamplingError> {
        records.sort_unstable_by_key(|r| (r.player, r.game, r.day));
        for pair in records.windows(2) {
            if (pair[0].player, pair[0].game, pair[0].day)
                == (pair[1].player, pair[1].game, pair[1].day)
            {
                return Err(SamplingError::DuplicateActivity {
                    player: pair[0].player,
                    game: pair[0].game,
                    day: pair[0].day,
                });
            }
        }
        Ok(ActivityLog { records })
    }

    pub fn records(&self) -> &[ActivityRecord] {
        &self.records
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Read `player_id,game_id,date,playtime_minutes` CSV (header required,
    /// ISO-8601 dates).
    pub fn read_csv_path(path: impl AsRef<Path>) -> Result<Self, SamplingError> {
        let mut reader = csv::Reader::from_path(path.as_ref())?;
        let mut records = Vec::new();
        for (i, row) in reader.records().enumerate() {
            let line = i + 2; // header is line 1
            let parse_err = |message: String| SamplingError::ActivityParse { line, message };
            let row = row.map_err(|e| parse_err(e.to_string()))?;
            if row.len() != 4 {
                return Err(parse_err(format!("expected 4 fields, found {}", row.len())));
            }
            let player = row[0]
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad player_id: {e}")))?;
            let game = row[1]
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad game_id: {e}")))?;
            let day = NaiveDate::parse_from_str(row[2].trim(), "%Y-%m-%d")
                .map_err(|e| parse_err(format!("bad date: {e}")))?;
            let playtime_minutes = row[3]
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad playtime_minutes: {e}")))?;
            records.push(ActivityRecord {
                player,
                game,
                day,
                playtime_minutes,
            });
        }
        Self::from_records(records)
    }

    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "player_id,game_id,date,playtime_minutes")?;
        for r in &self.records {
            writeln!(w, "{},{},{},{}", r.player, r.game, r.day, r.playtime_minutes)?;
        }
        Ok(())
    }
}

/// Inclusive date range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationWindow {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl ObservationWindow {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self, SamplingError> {
        if start > end {
            return Err(SamplingError::InvalidWindow { start, end });
        }
        Ok(ObservationWindow { start, end })
    }

    pub fn contains(&self, day: NaiveDate) -> bool {
        self.start <= day && day <= self.end
    }
}

#[derive(Debug, Error)]
pub enum SamplingError {
    #[error("seed set is empty")]
    EmptySeeds,
    #[error("seed player {0} has a private profile")]
    PrivateSeed(PlayerId),
    #[error(
        "crawl aborted after {fetched} fetches with {} ids pending: {source}",
        pending.len()
    )]
    Aborted {
        source: ProviderError,
        fetched: usize,
        /// Unfetched frontier at abort time; persist to resume.
        pending: Vec<PlayerId>,
    },
    #[error("invalid observation window: start {start} is after end {end}")]
    InvalidWindow { start: NaiveDate, end: NaiveDate },
    #[error("duplicate activity record for player {player}, game {game}, day {day}")]
    DuplicateActivity {
        player: PlayerId,
        game: GameId,
        day: NaiveDate,
    },
    #[error("activity csv parse error at line {line}: {message}")]
    ActivityParse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("activity csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Node and edge counts after each crawl step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnowballStats {
    pub seeds: usize,
    pub step1_nodes: usize,
    pub step1_edges: usize,
    pub step2_nodes: usize,
    pub step3_nodes: usize,
    pub step3_edges: usize,
    pub step4_edges: usize,
    pub private_removed: usize,
    pub final_nodes: usize,
    pub final_edges: usize,
    pub fetches: usize,
}

/// Fetch every id in `frontier` not already cached, in ascending order.
fn fetch_frontier<P: FriendProvider>(
    provider: &P,
    frontier: &BTreeSet<PlayerId>,
    cache: &mut BTreeMap<PlayerId, FriendList>,
    private: &mut BTreeSet<PlayerId>,
) -> Result<(), SamplingError> {
    let todo: Vec<PlayerId> = frontier
        .iter()
        .copied()
        .filter(|id| !cache.contains_key(id))
        .collect();
    for (i, id) in todo.iter().enumerate() {
        match provider.friends_of(*id) {
            Ok(list) => {
                if list == FriendList::Private {
                    private.insert(*id);
                }
                cache.insert(*id, list);
            }
            Err(source) => {
                return Err(SamplingError::Aborted {
                    source,
                    fetched: cache.len(),
                    pending: todo[i..].to_vec(),
                });
            }
        }
    }
    Ok(())
}

/// Run the four-step snowball crawl from `seeds`.
pub fn snowball_build<P: FriendProvider>(
    provider: &P,
    seeds: &BTreeSet<PlayerId>,
) -> Result<(Graph, SnowballStats), SamplingError> {
    if seeds.is_empty() {
        return Err(SamplingError::EmptySeeds);
    }
    let mut stats = SnowballStats {
        seeds: seeds.len(),
        ..SnowballStats::default()
    };
    let mut cache: BTreeMap<PlayerId, FriendList> = BTreeMap::new();
    let mut private: BTreeSet<PlayerId> = BTreeSet::new();

    // Step 1: seeds plus their friends.
    fetch_frontier(provider, seeds, &mut cache, &mut private)?;
    for &seed in seeds {
        if private.contains(&seed) {
            return Err(SamplingError::PrivateSeed(seed));
        }
    }
    let mut nodes: BTreeSet<PlayerId> = seeds.clone();
    let mut edges: Vec<(PlayerId, PlayerId)> = Vec::new();
    for &seed in seeds {
        if let Some(FriendList::Public(friends)) = cache.get(&seed) {
            for &f in friends {
                nodes.insert(f);
                edges.push((seed, f));
            }
        }
    }
    let (g1, _) = Graph::from_parts(nodes.iter().copied(), edges.iter().copied());
    stats.step1_nodes = g1.node_count();
    stats.step1_edges = g1.edge_count();

    // Step 2: largest connected component.
    let lcc = g1
        .largest_connected_component()
        .expect("seed set is non-empty");
    nodes = lcc.nodes().iter().copied().collect();
    edges = lcc.edges().collect();
    stats.step2_nodes = nodes.len();

    // Step 3: expand the component members' friends.
    fetch_frontier(provider, &nodes, &mut cache, &mut private)?;
    let mut added: BTreeSet<PlayerId> = BTreeSet::new();
    for &u in &nodes {
        if let Some(FriendList::Public(friends)) = cache.get(&u) {
            for &f in friends {
                if !nodes.contains(&f) {
                    added.insert(f);
                }
                edges.push((u, f));
            }
        }
    }
    nodes.extend(added.iter().copied());
    stats.step3_nodes = nodes.len();
    stats.step3_edges = Graph::from_parts(nodes.iter().copied(), edges.iter().copied())
        .0
        .edge_count();

    // Step 4: closure pass over the newly added nodes; edges only, no new
    // nodes.
    fetch_frontier(provider, &added, &mut cache, &mut private)?;
    for &u in &added {
        if let Some(FriendList::Public(friends)) = cache.get(&u) {
            for &f in friends {
                if nodes.contains(&f) {
                    edges.push((u, f));
                }
            }
        }
    }
    stats.step4_edges = Graph::from_parts(nodes.iter().copied(), edges.iter().copied())
        .0
        .edge_count();

    // Finalize: drop private-profile nodes along with their edges.
    stats.private_removed = nodes.iter().filter(|id| private.contains(id)).count();
    nodes.retain(|id| !private.contains(id));
    let final_edges = edges
        .into_iter()
        .filter(|(a, b)| nodes.contains(a) && nodes.contains(b));
    let (graph, _) = Graph::from_parts(nodes.iter().copied(), final_edges);
    stats.final_nodes = graph.node_count();
    stats.final_edges = graph.edge_count();
    stats.fetches = cache.len();
    Ok((graph, stats))
}

/// Players with at least one strictly positive playtime record in the
/// window.
pub fn active_players(log: &ActivityLog, window: &ObservationWindow) -> HashSet<PlayerId> {
    log.records()
        .iter()
        .filter(|r| r.playtime_minutes > 0 && window.contains(r.day))
        .map(|r| r.player)
        .collect()
}

/// Restrict to active players, then drop nodes left without any edge. The
/// result is empty or has minimum degree ≥ 1.
pub fn prune_inactive(g: &Graph, active: &HashSet<PlayerId>) -> Graph {
    let mut current = g.induced_subgraph(active);
    loop {
        let keep: HashSet<PlayerId> = (0..current.node_count())
            .filter(|&u| current.degree(u) >= 1)
            .map(|u| current.id_of(u))
            .collect();
        if keep.len() == current.node_count() {
            return current;
        }
        current = current.induced_subgraph(&keep);
    }
}

/// Players of `game` active within the window and present in `g`.
fn game_players(
    g: &Graph,
    log: &ActivityLog,
    window: &ObservationWindow,
    game: GameId,
) -> HashSet<PlayerId> {
    log.records()
        .iter()
        .filter(|r| {
            r.game == game
                && r.playtime_minutes > 0
                && window.contains(r.day)
                && g.contains(r.player)
        })
        .map(|r| r.player)
        .collect()
}

/// Games ranked by number of distinct active players present in `g`, ties
/// broken by total playtime then game id; games whose induced subgraph
/// would fall below `min_nodes` are excluded before the cut to `n`.
pub fn top_games(
    g: &Graph,
    log: &ActivityLog,
    window: &ObservationWindow,
    n: usize,
    min_nodes: usize,
) -> Vec<GameId> {
    let mut players: BTreeMap<GameId, HashSet<PlayerId>> = BTreeMap::new();
    let mut playtime: BTreeMap<GameId, u64> = BTreeMap::new();
    for r in log.records() {
        if r.playtime_minutes > 0 && window.contains(r.day) && g.contains(r.player) {
            players.entry(r.game).or_default().insert(r.player);
            *playtime.entry(r.game).or_insert(0) += r.playtime_minutes;
        }
    }
    let mut ranked: Vec<(GameId, usize, u64)> = players
        .into_iter()
        .map(|(game, set)| (game, set.len(), playtime[&game]))
        .filter(|&(_, count, _)| count >= min_nodes)
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(b.2.cmp(&a.2)).then(a.0.cmp(&b.0)));
    ranked.into_iter().take(n).map(|(game, _, _)| game).collect()
}

/// Friendship subgraph induced by the active players of one game.
pub fn game_subgraph(
    g: &Graph,
    log: &ActivityLog,
    window: &ObservationWindow,
    game: GameId,
) -> Graph {
    g.induced_subgraph(&game_players(g, log, window, game))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(id: u64) -> PlayerId {
        PlayerId(id)
    }

    fn day(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    fn window() -> ObservationWindow {
        ObservationWindow::new(day("2020-04-13"), day("2020-05-17")).unwrap()
    }

    /// In-memory symmetric fixture provider.
    struct MapProvider {
        friends: BTreeMap<PlayerId, FriendList>,
    }

    impl MapProvider {
        fn new(pairs: &[(u64, u64)], private: &[u64]) -> Self {
            let mut map: BTreeMap<PlayerId, Vec<PlayerId>> = BTreeMap::new();
            for &(a, b) in pairs {
                map.entry(p(a)).or_default().push(p(b));
                map.entry(p(b)).or_default().push(p(a));
            }
            let mut friends: BTreeMap<PlayerId, FriendList> = map
                .into_iter()
                .map(|(k, v)| (k, FriendList::Public(v)))
                .collect();
            for &id in private {
                friends.insert(p(id), FriendList::Private);
            }
            MapProvider { friends }
        }
    }

    impl FriendProvider for MapProvider {
        fn friends_of(&self, player: PlayerId) -> Result<FriendList, ProviderError> {
            Ok(self
                .friends
                .get(&player)
                .cloned()
                .unwrap_or(FriendList::Public(Vec::new())))
        }
    }

    struct FailingProvider;

    impl FriendProvider for FailingProvider {
        fn friends_of(&self, _player: PlayerId) -> Result<FriendList, ProviderError> {
            Err(ProviderError::Transient("connection reset".into()))
        }
    }

    #[test]
    fn symmetric_pair_builds_one_edge() {
        let provider = MapProvider::new(&[(1, 2)], &[]);
        let seeds: BTreeSet<_> = [p(1)].into();
        let (g, stats) = snowball_build(&provider, &seeds).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(stats.private_removed, 0);
    }

    #[test]
    fn lcc_tie_keeps_pair_with_smallest_id() {
        // Two disjoint pairs seeded from both sides: only the component
        // containing the smallest id survives step 2.
        let provider = MapProvider::new(&[(1, 2), (3, 4)], &[]);
        let seeds: BTreeSet<_> = [p(1), p(3)].into();
        let (g, stats) = snowball_build(&provider, &seeds).unwrap();
        assert_eq!(stats.step1_nodes, 4);
        assert_eq!(stats.step2_nodes, 2);
        assert!(g.contains(p(1)) && g.contains(p(2)));
        assert!(!g.contains(p(3)));
    }

    #[test]
    fn step3_expands_beyond_the_lcc() {
        // Ring of seeds with pendant friends two hops out: step 3 must add
        // nodes beyond the step-2 component.
        let mut pairs = vec![(1, 2), (2, 3), (3, 1)];
        for i in 0..10u64 {
            pairs.push((1 + i % 3, 100 + i));
            pairs.push((100 + i, 200 + i));
        }
        let provider = MapProvider::new(&pairs, &[]);
        let seeds: BTreeSet<_> = [p(1), p(2), p(3)].into();
        let (_, stats) = snowball_build(&provider, &seeds).unwrap();
        assert!(stats.step3_nodes > stats.step2_nodes);
    }

    #[test]
    fn closure_pass_adds_edges_but_no_nodes() {
        // Nodes 3 and 5 are added in step 3 (friends of LCC member 2), so
        // the edge 3-5 only becomes visible when step 4 fetches them. Node
        // 4, known only to 3, must never be stored.
        let provider = MapProvider::new(&[(1, 2), (2, 3), (2, 5), (3, 5), (3, 4)], &[]);
        let seeds: BTreeSet<_> = [p(1)].into();
        let (g, stats) = snowball_build(&provider, &seeds).unwrap();
        assert!(g.contains(p(3)) && g.contains(p(5)));
        assert!(!g.contains(p(4)));
        assert!(g.has_edge(p(3), p(5)));
        assert_eq!(stats.step4_edges, stats.step3_edges + 1);
    }

    #[test]
    fn private_profiles_are_dropped_at_finalize() {
        let provider = MapProvider::new(&[(1, 2), (2, 3), (1, 3)], &[3]);
        let seeds: BTreeSet<_> = [p(1)].into();
        let (g, stats) = snowball_build(&provider, &seeds).unwrap();
        assert!(!g.contains(p(3)));
        assert_eq!(stats.private_removed, 1);
        assert_eq!(g.node_count(), 2);
    }

    #[test]
    fn private_seed_is_rejected() {
        let provider = MapProvider::new(&[(1, 2)], &[1]);
        let seeds: BTreeSet<_> = [p(1)].into();
        assert!(matches!(
            snowball_build(&provider, &seeds),
            Err(SamplingError::PrivateSeed(PlayerId(1)))
        ));
    }

    #[test]
    fn empty_seeds_are_rejected() {
        let provider = MapProvider::new(&[], &[]);
        assert!(matches!(
            snowball_build(&provider, &BTreeSet::new()),
            Err(SamplingError::EmptySeeds)
        ));
    }

    #[test]
    fn provider_failure_reports_pending_frontier() {
        let seeds: BTreeSet<_> = [p(1), p(2)].into();
        match snowball_build(&FailingProvider, &seeds) {
            Err(SamplingError::Aborted { pending, .. }) => {
                assert_eq!(pending, vec![p(1), p(2)]);
            }
            other => panic!("expected abort, got {other:?}"),
        }
    }

    fn log(records: &[(u64, u64, &str, u64)]) -> ActivityLog {
        ActivityLog::from_records(
            records
                .iter()
                .map(|&(player, game, d, minutes)| ActivityRecord {
                    player: p(player),
                    game: GameId(game),
                    day: day(d),
                    playtime_minutes: minutes,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn active_players_needs_positive_playtime_in_window() {
        let empty = ActivityLog::default();
        assert!(active_players(&empty, &window()).is_empty());

        let l = log(&[
            (1, 10, "2020-04-20", 30),
            (2, 10, "2020-04-20", 0),
            (3, 10, "2021-01-01", 45),
        ]);
        let active = active_players(&l, &window());
        assert!(active.contains(&p(1)));
        assert!(!active.contains(&p(2)), "zero playtime is not activity");
        assert!(!active.contains(&p(3)), "outside the window");
    }

    #[test]
    fn prune_drops_newly_isolated_actives() {
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3))]);
        let active: HashSet<_> = [p(1), p(3)].into();
        assert!(prune_inactive(&g, &active).is_empty());
    }

    #[test]
    fn prune_keeps_fully_active_triangle() {
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(1), p(3))]);
        let active: HashSet<_> = [p(1), p(2), p(3)].into();
        assert_eq!(prune_inactive(&g, &active), g);
    }

    #[test]
    fn prune_star_with_inactive_center_empties() {
        let g = Graph::from_edges([(p(1), p(2)), (p(1), p(3)), (p(1), p(4))]);
        let active: HashSet<_> = [p(2), p(3), p(4)].into();
        assert!(prune_inactive(&g, &active).is_empty());
    }

    #[test]
    fn top_games_ranks_by_distinct_players() {
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(3), p(4)), (p(4), p(5))]);
        let l = log(&[
            (1, 10, "2020-04-14", 5),
            (2, 10, "2020-04-14", 5),
            (3, 10, "2020-04-14", 5),
            (4, 10, "2020-04-15", 5),
            (5, 10, "2020-04-15", 5),
            (1, 20, "2020-04-14", 500),
            (2, 20, "2020-04-14", 500),
            (3, 20, "2020-04-15", 500),
        ]);
        assert_eq!(
            top_games(&g, &l, &window(), 10, 1),
            vec![GameId(10), GameId(20)]
        );
        // min_nodes floor excludes before truncation.
        assert_eq!(top_games(&g, &l, &window(), 10, 4), vec![GameId(10)]);
        assert_eq!(top_games(&g, &l, &window(), 1, 1), vec![GameId(10)]);
    }

    #[test]
    fn top_games_ties_break_by_playtime_then_id() {
        let g = Graph::from_edges([(p(1), p(2)), (p(3), p(4))]);
        let l = log(&[
            (1, 30, "2020-04-14", 10),
            (2, 30, "2020-04-14", 10),
            (1, 20, "2020-04-14", 10),
            (2, 20, "2020-04-14", 50),
            (3, 40, "2020-04-14", 5),
            (4, 40, "2020-04-14", 5),
        ]);
        // All three games have 2 players; 20 has most playtime, then 30 and
        // 40 tie at 20 minutes and fall back to id order.
        assert_eq!(
            top_games(&g, &l, &window(), 10, 1),
            vec![GameId(20), GameId(30), GameId(40)]
        );
    }

    #[test]
    fn game_subgraph_examples() {
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3)), (p(1), p(3))]);
        let nobody = ActivityLog::default();
        assert!(game_subgraph(&g, &nobody, &window(), GameId(10)).is_empty());

        let everyone = log(&[
            (1, 10, "2020-04-14", 5),
            (2, 10, "2020-04-14", 5),
            (3, 10, "2020-04-14", 5),
        ]);
        assert_eq!(game_subgraph(&g, &everyone, &window(), GameId(10)), g);

        let some = log(&[(1, 10, "2020-04-14", 5), (3, 10, "2020-04-14", 5)]);
        let sub = game_subgraph(&g, &some, &window(), GameId(10));
        assert_eq!(sub.node_count(), 2);
        assert_eq!(sub.edge_count(), 1);
    }

    #[test]
    fn game_subgraph_nodes_are_active_players() {
        let g = Graph::from_edges([(p(1), p(2)), (p(2), p(3))]);
        let l = log(&[
            (1, 10, "2020-04-14", 5),
            (2, 10, "2020-04-14", 0),
            (3, 99, "2020-04-14", 5),
        ]);
        let active = active_players(&l, &window());
        let sub = game_subgraph(&g, &l, &window(), GameId(10));
        assert!(sub.nodes().iter().all(|id| active.contains(id)));
        assert_eq!(sub.node_count(), 1);
    }

    #[test]
    fn duplicate_activity_records_are_rejected() {
        let result = ActivityLog::from_records(vec![
            ActivityRecord {
                player: p(1),
                game: GameId(10),
                day: day("2020-04-14"),
                playtime_minutes: 5,
            },
            ActivityRecord {
                player: p(1),
                game: GameId(10),
                day: day("2020-04-14"),
                playtime_minutes: 9,
            },
        ]);
        assert!(matches!(
            result,
            Err(SamplingError::DuplicateActivity { .. })
        ));
    }

    #[test]
    fn activity_csv_round_trip_and_parse_errors() {
        let l = log(&[(1, 10, "2020-04-14", 5), (2, 20, "2020-04-15", 0)]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("activity.csv");
        let mut buf = Vec::new();
        l.write_csv(&mut buf).unwrap();
        std::fs::write(&path, &buf).unwrap();
        assert_eq!(ActivityLog::read_csv_path(&path).unwrap(), l);

        std::fs::write(
            &path,
            "player_id,game_id,date,playtime_minutes\n1,10,not-a-date,5\n",
        )
        .unwrap();
        assert!(matches!(
            ActivityLog::read_csv_path(&path),
            Err(SamplingError::ActivityParse { line: 2, .. })
        ));
    }

    #[test]
    fn window_validation() {
        assert!(ObservationWindow::new(day("2020-05-01"), day("2020-04-01")).is_err());
    }
}
