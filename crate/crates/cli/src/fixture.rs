//! Deterministic synthetic fixture: a population of players in friend
//! groups, a game catalog in three mechanic families, five weeks of
//! activity, and a ready-to-run pipeline configuration.
//!
//! Friend groups have a preferred game family, so game subgraphs inherit
//! real community structure; a slice of the population is private and a
//! slice is inactive, exercising the crawl and pruning rules.

use crate::config::{InputPaths, PipelineConfig};
use crate::errors::CliError;
use crate::stages::atomic_write;
use chrono::NaiveDate;
use rand::seq::IndexedRandom;
use rand::Rng;
use std::fmt::Write as _;
use std::path::Path;
use steamnet_core::clustering::ClusteringConfig;
use steamnet_core::embedding::EmbeddingConfig;
use steamnet_core::rng::derive_rng;
use steamnet_core::sampling::ObservationWindow;

const GROUP_SIZE: usize = 50;
const FAMILY_GENRES: [&[&str]; 3] = [
    &["Action", "Adventure", "RPG"],
    &["Strategy", "Simulation"],
    &["Casual", "Sports", "Racing"],
];
const FAMILY_TAGS: [&[&str]; 3] = [
    &["team-based", "esport", "competitive", "shooter", "online coop"],
    &["grand strategy", "base building", "turn-based", "economy", "sandbox"],
    &["casual", "local multiplayer", "family friendly", "arcade", "relaxing"],
];

pub struct FixtureSpec {
    pub players: usize,
    pub games: usize,
    pub seed: u64,
}

impl Default for FixtureSpec {
    fn default() -> Self {
        FixtureSpec {
            players: 2_000,
            games: 20,
            seed: 7,
        }
    }
}

/// Write the fixture under `dir` and return the generated configuration.
pub fn generate(dir: &Path, spec: &FixtureSpec) -> Result<PipelineConfig, CliError> {
    let n_players = spec.players.max(GROUP_SIZE);
    let n_games = spec.games.max(3);
    let n_groups = n_players.div_ceil(GROUP_SIZE);
    let group_of = |player: usize| (player - 1) / GROUP_SIZE;
    let family_of_group = |group: usize| group % 3;

    // Friendships: dense inside groups, sparse across, plus a small layer
    // of high-degree connectors bridging groups (two crawl hops from the
    // seeds must be able to reach most of the population).
    let mut rng = derive_rng(spec.seed, &[1]);
    let mut adjacency: Vec<Vec<u64>> = vec![Vec::new(); n_players + 1];
    for a in 1..=n_players {
        for b in (a + 1)..=n_players {
            let same_group = group_of(a) == group_of(b);
            let prob = if same_group { 0.30 } else { 0.0015 };
            if rng.random::<f64>() < prob {
                adjacency[a].push(b as u64);
                adjacency[b].push(a as u64);
            }
        }
    }
    let mut rng_conn = derive_rng(spec.seed, &[5]);
    let n_connectors = (n_players / 50).max(1);
    for _ in 0..n_connectors {
        let hub = 1 + rng_conn.random_range(0..n_players);
        for _ in 0..60 {
            let other = 1 + rng_conn.random_range(0..n_players);
            if other != hub {
                adjacency[hub].push(other as u64);
                adjacency[other].push(hub as u64);
            }
        }
    }

    // Privacy: a few percent of non-seed players. Seeds come one per group
    // and know each other (they met reviewing the same titles), which keeps
    // the first crawl expansion in one component.
    let mut rng_privacy = derive_rng(spec.seed, &[2]);
    let seeds: Vec<u64> = (0..10.min(n_groups))
        .map(|g| (g * GROUP_SIZE + 1) as u64)
        .collect();
    for pair in seeds.windows(2) {
        adjacency[pair[0] as usize].push(pair[1]);
        adjacency[pair[1] as usize].push(pair[0]);
    }
    let private: Vec<bool> = (0..=n_players)
        .map(|p| p > 0 && !seeds.contains(&(p as u64)) && rng_privacy.random::<f64>() < 0.02)
        .collect();

    let friends_dir = dir.join("fixtures").join("friends");
    for player in 1..=n_players {
        let path = friends_dir.join(format!("{player}.json"));
        let body = if private[player] {
            r#"{"private": true}"#.to_string()
        } else {
            let mut ids = adjacency[player].clone();
            ids.sort_unstable();
            ids.dedup();
            serde_json::to_string(&ids)?
        };
        atomic_write(&path, body.as_bytes())?;
    }

    let seeds_path = dir.join("fixtures").join("seeds.json");
    atomic_write(&seeds_path, serde_json::to_string(&seeds)?.as_bytes())?;

    // Catalog: games cycle through the three families.
    let catalog_path = dir.join("fixtures").join("catalog.jsonl");
    let mut catalog = String::new();
    for game in 1..=n_games {
        let family = (game - 1) % 3;
        let mut rng_game = derive_rng(spec.seed, &[3, game as u64]);
        let mut tags: Vec<String> = FAMILY_TAGS[family]
            .choose_multiple(&mut rng_game, 3)
            .map(|t| t.to_string())
            .collect();
        tags.push("multiplayer".to_string()); // ubiquitous tag
        tags.push(format!("flavor-{game}"));
        let genres: Vec<String> = FAMILY_GENRES[family]
            .choose_multiple(&mut rng_game, 2)
            .map(|g| g.to_string())
            .collect();
        let entry = serde_json::json!({
            "game_id": game,
            "name": format!("Game {game:02}"),
            "genres": genres,
            "tags": tags,
        });
        let _ = writeln!(catalog, "{entry}");
    }
    atomic_write(&catalog_path, catalog.as_bytes())?;

    // Activity: active players put time into games of their group's
    // preferred family (and sometimes beyond) on a few days of the window.
    let window = ObservationWindow::new(
        NaiveDate::from_ymd_opt(2020, 4, 13).expect("valid date"),
        NaiveDate::from_ymd_opt(2020, 5, 17).expect("valid date"),
    )
    .expect("valid window");
    let days: Vec<NaiveDate> = {
        let mut days = Vec::new();
        let mut d = window.start;
        while d <= window.end {
            days.push(d);
            d = d.succ_opt().expect("date in range");
        }
        days
    };
    let games_of_family = |family: usize| -> Vec<usize> {
        (1..=n_games).filter(|g| (g - 1) % 3 == family).collect()
    };
    let mut activity = String::from("player_id,game_id,date,playtime_minutes\n");
    for player in 1..=n_players {
        let mut rng_p = derive_rng(spec.seed, &[4, player as u64]);
        if rng_p.random::<f64>() < 0.25 {
            // Inactive: either silent or a zero-minute record.
            if rng_p.random::<f64>() < 0.3 {
                let day = days[rng_p.random_range(0..days.len())];
                let game = 1 + rng_p.random_range(0..n_games);
                let _ = writeln!(activity, "{player},{game},{day},0");
            }
            continue;
        }
        let family = family_of_group(group_of(player));
        let preferred = games_of_family(family);
        let n_picks = 1 + rng_p.random_range(0..3);
        let mut picks: Vec<usize> = preferred
            .choose_multiple(&mut rng_p, n_picks.min(preferred.len()))
            .copied()
            .collect();
        if rng_p.random::<f64>() < 0.3 {
            picks.push(1 + rng_p.random_range(0..n_games));
        }
        picks.sort_unstable();
        picks.dedup();
        for game in picks {
            let n_days = 1 + rng_p.random_range(0..4);
            let mut chosen: Vec<NaiveDate> = days
                .choose_multiple(&mut rng_p, n_days)
                .copied()
                .collect();
            chosen.sort_unstable();
            for day in chosen {
                let minutes = 10 + rng_p.random_range(0..110);
                let _ = writeln!(activity, "{player},{game},{day},{minutes}");
            }
        }
    }
    let activity_path = dir.join("fixtures").join("activity.csv");
    atomic_write(&activity_path, activity.as_bytes())?;

    // The written config holds paths relative to its own location; loading
    // anchors them. The returned config is pre-anchored for direct use.
    let config = PipelineConfig {
        inputs: InputPaths {
            edge_list: None,
            fixture_root: Some("fixtures".into()),
            seeds: Some("fixtures/seeds.json".into()),
            activity: "fixtures/activity.csv".into(),
            catalog: "fixtures/catalog.jsonl".into(),
        },
        window,
        top_n: n_games,
        min_nodes: 25,
        top_k_tags: 4,
        bootstrap_replicates: 100,
        embedding: EmbeddingConfig::default(),
        clustering: ClusteringConfig {
            k: 3,
            k_min: 2,
            k_max: 8,
            ..ClusteringConfig::default()
        },
        out_dir: "out".into(),
        seed: spec.seed,
        jobs: None,
    };
    let mut bytes = serde_json::to_vec_pretty(&config)?;
    bytes.push(b'\n');
    atomic_write(&dir.join("config.json"), &bytes)?;
    Ok(PipelineConfig {
        inputs: InputPaths {
            edge_list: None,
            fixture_root: Some(dir.join("fixtures")),
            seeds: Some(seeds_path),
            activity: activity_path,
            catalog: catalog_path,
        },
        out_dir: dir.join("out"),
        ..config
    })
}
