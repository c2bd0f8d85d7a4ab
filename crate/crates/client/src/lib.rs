//! Data ingestion for the pipeline: a fixture-backed provider for
//! reproducible offline runs, and an optional live Steam Web API client with
//! rate limiting, response caching, and retry.
//!
//! Activity is not observed directly: providers deliver daily cumulative
//! playtime snapshots, and [`derive_activity`] turns consecutive snapshots
//! into per-day playtime deltas.

mod bucket;
mod cache;
mod fixture;
mod live;

pub use bucket::TokenBucket;
pub use cache::{CachedResponse, ResponseCache};
pub use fixture::FixtureProvider;
pub use live::{LiveClient, LiveConfig};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use steamnet_core::ids::{GameId, PlayerId};
use steamnet_core::sampling::{ActivityLog, ActivityRecord, ProviderError, SamplingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("live mode requires an api key in the {0} environment variable")]
    MissingApiKey(String),
    #[error("fixture mode requires a fixture root directory")]
    MissingFixtureRoot,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("http client construction failed: {0}")]
    Http(#[from] reqwest::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderMode {
    Fixture,
    Live,
}

/// Exponential backoff retry policy for transient failures.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    pub base_delay_ms: u64,
    pub max_delay_ms: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_attempts: 3,
            base_delay_ms: 250,
            max_delay_ms: 5_000,
        }
    }
}

impl RetryPolicy {
    pub fn delay_for(&self, attempt: u32) -> std::time::Duration {
        let exp = self.base_delay_ms.saturating_mul(1u64 << attempt.min(20));
        std::time::Duration::from_millis(exp.min(self.max_delay_ms))
    }
}

/// Provider selection and tuning, serializable as part of a pipeline
/// configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProviderConfig {
    pub mode: ProviderMode,
    pub fixture_root: Option<PathBuf>,
    /// Environment variable holding the API key in live mode; the key never
    /// appears in configuration files.
    pub api_key_env: String,
    pub requests_per_day: u64,
    /// Token-bucket burst size for the short window.
    pub burst: f64,
    pub retry: RetryPolicy,
    pub cache_dir: Option<PathBuf>,
}

impl Default for ProviderConfig {
    fn default() -> Self {
        ProviderConfig {
            mode: ProviderMode::Fixture,
            fixture_root: None,
            api_key_env: "STEAM_API_KEY".to_string(),
            requests_per_day: 100_000,
            burst: 10.0,
            retry: RetryPolicy::default(),
            cache_dir: None,
        }
    }
}

/// Cumulative playtime of one (player, game) pair observed on one day.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaytimeSnapshot {
    pub player: PlayerId,
    pub game: GameId,
    pub day: NaiveDate,
    pub playtime_forever_minutes: u64,
}

/// Source of daily playtime snapshots.
pub trait PlaytimeProvider {
    fn snapshot_playtimes(
        &self,
        players: &[PlayerId],
        day: NaiveDate,
    ) -> Result<Vec<PlaytimeSnapshot>, ProviderError>;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeriveStats {
    /// Negative cumulative deltas (provider anomalies) clamped to zero.
    pub clamped_negative_deltas: usize,
}

/// Turn cumulative snapshots into per-day playtime deltas.
///
/// The first observed day of a (player, game) pair establishes the baseline
/// and contributes 0 minutes; later days contribute the increase over the
/// previous snapshot, clamped at 0 when a total regresses.
pub fn derive_activity(
    snapshots: &[PlaytimeSnapshot],
) -> Result<(ActivityLog, DeriveStats), SamplingError> {
    let mut sorted: Vec<&PlaytimeSnapshot> = snapshots.iter().collect();
    sorted.sort_by_key(|s| (s.player, s.game, s.day));
    let mut stats = DeriveStats::default();
    let mut records = Vec::with_capacity(sorted.len());
    let mut prev: Option<&PlaytimeSnapshot> = None;
    for snap in sorted {
        let minutes = match prev {
            Some(p) if (p.player, p.game) == (snap.player, snap.game) => {
                if snap.playtime_forever_minutes < p.playtime_forever_minutes {
                    stats.clamped_negative_deltas += 1;
                    log::warn!(
                        "cumulative playtime regressed for player {} game {} on {}: {} -> {}",
                        snap.player,
                        snap.game,
                        snap.day,
                        p.playtime_forever_minutes,
                        snap.playtime_forever_minutes
                    );
                    0
                } else {
                    snap.playtime_forever_minutes - p.playtime_forever_minutes
                }
            }
            _ => 0,
        };
        records.push(ActivityRecord {
            player: snap.player,
            game: snap.game,
            day: snap.day,
            playtime_minutes: minutes,
        });
        prev = Some(snap);
    }
    Ok((ActivityLog::from_records(records)?, stats))
}
