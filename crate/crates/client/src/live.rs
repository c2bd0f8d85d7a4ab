//! Live Steam Web API client: friend lists, owned games, recently played.
//!
//! Every request flows through the shared token bucket, transient failures
//! are retried with exponential backoff, and responses are cached on disk
//! keyed by endpoint and parameters (the API key is never part of the cache
//! identity). Authorization failures on profile data mean a private
//! profile, not an error.

use crate::bucket::TokenBucket;
use crate::cache::{CachedResponse, ResponseCache};
use crate::{ClientError, PlaytimeProvider, PlaytimeSnapshot, RetryPolicy};
use chrono::NaiveDate;
use serde::Deserialize;
use std::path::PathBuf;
use std::time::Duration;
use steamnet_core::ids::{GameId, PlayerId};
use steamnet_core::sampling::{FriendList, FriendProvider, ProviderError};

pub const DEFAULT_BASE_URL: &str = "https://api.steampowered.com";

#[derive(Debug, Clone)]
pub struct LiveConfig {
    pub api_key: String,
    pub base_url: String,
    pub requests_per_day: u64,
    pub burst: f64,
    pub retry: RetryPolicy,
    pub cache_dir: Option<PathBuf>,
    pub timeout: Duration,
}

impl LiveConfig {
    /// Read the API key from `env_var`; all other knobs at defaults.
    pub fn from_env(env_var: &str) -> Result<Self, ClientError> {
        let api_key =
            std::env::var(env_var).map_err(|_| ClientError::MissingApiKey(env_var.into()))?;
        Ok(LiveConfig {
            api_key,
            base_url: DEFAULT_BASE_URL.to_string(),
            requests_per_day: 100_000,
            burst: 10.0,
            retry: RetryPolicy::default(),
            cache_dir: None,
            timeout: Duration::from_secs(30),
        })
    }
}

pub struct LiveClient {
    http: reqwest::blocking::Client,
    api_key: String,
    base_url: String,
    bucket: TokenBucket,
    retry: RetryPolicy,
    cache: Option<ResponseCache>,
}

#[derive(Deserialize)]
struct FriendListEnvelope {
    friendslist: FriendsInner,
}

#[derive(Deserialize)]
struct FriendsInner {
    friends: Vec<FriendEntry>,
}

#[derive(Deserialize)]
struct FriendEntry {
    steamid: String,
}

#[derive(Deserialize)]
struct OwnedGamesEnvelope {
    response: OwnedGamesInner,
}

#[derive(Deserialize, Default)]
struct OwnedGamesInner {
    #[serde(default)]
    games: Vec<OwnedGameEntry>,
}

#[derive(Deserialize)]
struct OwnedGameEntry {
    appid: u64,
    #[serde(default)]
    playtime_forever: u64,
}

#[derive(Deserialize)]
struct RecentGamesEnvelope {
    response: RecentGamesInner,
}

#[derive(Deserialize, Default)]
struct RecentGamesInner {
    #[serde(default)]
    games: Vec<RecentGameEntry>,
}

#[derive(Deserialize)]
struct RecentGameEntry {
    appid: u64,
    #[serde(default)]
    playtime_2weeks: u64,
}

impl LiveClient {
    pub fn new(cfg: LiveConfig) -> Result<Self, ClientError> {
        let cache = match &cfg.cache_dir {
            Some(dir) => Some(ResponseCache::new(dir.clone())?),
            None => None,
        };
        Ok(LiveClient {
            http: reqwest::blocking::Client::builder()
                .timeout(cfg.timeout)
                .build()?,
            api_key: cfg.api_key,
            base_url: cfg.base_url.trim_end_matches('/').to_string(),
            bucket: TokenBucket::per_day(cfg.requests_per_day, cfg.burst),
            retry: cfg.retry,
            cache,
        })
    }

    /// Issue a GET for `identity` (path plus query, without the API key),
    /// serving from cache when possible. Only conclusive statuses (success
    /// or an authorization denial) are cached.
    fn get(&self, identity: &str) -> Result<CachedResponse, ProviderError> {
        let key = ResponseCache::key(identity);
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.get(&key) {
                return Ok(hit);
            }
        }
        let url = format!("{}/{}&key={}", self.base_url, identity, self.api_key);
        let mut last_failure = String::new();
        for attempt in 0..self.retry.max_attempts.max(1) {
            if attempt > 0 {
                std::thread::sleep(self.retry.delay_for(attempt - 1));
            }
            self.bucket.acquire();
            match self.http.get(&url).send() {
                Ok(resp) => {
                    let status = resp.status().as_u16();
                    let body = match resp.text() {
                        Ok(body) => body,
                        Err(e) => {
                            last_failure = format!("body read failed: {e}");
                            continue;
                        }
                    };
                    match status {
                        200 | 401 | 403 => {
                            let out = CachedResponse { status, body };
                            if let Some(cache) = &self.cache {
                                if let Err(e) = cache.put(&key, &out) {
                                    log::warn!("cache write failed for {identity}: {e}");
                                }
                            }
                            return Ok(out);
                        }
                        status if status >= 500 || status == 429 => {
                            last_failure = format!("status {status}");
                        }
                        status => {
                            return Err(ProviderError::Data(format!(
                                "{identity}: unexpected status {status}"
                            )));
                        }
                    }
                }
                Err(e) => last_failure = e.to_string(),
            }
        }
        Err(ProviderError::Transient(format!(
            "{identity}: gave up after {} attempts ({last_failure})",
            self.retry.max_attempts.max(1)
        )))
    }

    pub fn owned_games(&self, player: PlayerId) -> Result<Vec<(GameId, u64)>, ProviderError> {
        let identity = format!(
            "IPlayerService/GetOwnedGames/v0001/?steamid={player}&include_played_free_games=1&format=json"
        );
        let resp = self.get(&identity)?;
        if resp.status != 200 {
            return Ok(Vec::new());
        }
        let parsed: OwnedGamesEnvelope = serde_json::from_str(&resp.body)
            .map_err(|e| ProviderError::Data(format!("{identity}: bad payload: {e}")))?;
        Ok(parsed
            .response
            .games
            .into_iter()
            .map(|g| (GameId(g.appid), g.playtime_forever))
            .collect())
    }

    pub fn recently_played(&self, player: PlayerId) -> Result<Vec<(GameId, u64)>, ProviderError> {
        let identity =
            format!("IPlayerService/GetRecentlyPlayedGames/v0001/?steamid={player}&format=json");
        let resp = self.get(&identity)?;
        if resp.status != 200 {
            return Ok(Vec::new());
        }
        let parsed: RecentGamesEnvelope = serde_json::from_str(&resp.body)
            .map_err(|e| ProviderError::Data(format!("{identity}: bad payload: {e}")))?;
        Ok(parsed
            .response
            .games
            .into_iter()
            .map(|g| (GameId(g.appid), g.playtime_2weeks))
            .collect())
    }
}

impl FriendProvider for LiveClient {
    fn friends_of(&self, player: PlayerId) -> Result<FriendList, ProviderError> {
        let identity =
            format!("ISteamUser/GetFriendList/v0001/?steamid={player}&relationship=friend");
        let resp = self.get(&identity)?;
        if resp.status == 401 || resp.status == 403 {
            return Ok(FriendList::Private);
        }
        let parsed: FriendListEnvelope = serde_json::from_str(&resp.body)
            .map_err(|e| ProviderError::Data(format!("{identity}: bad payload: {e}")))?;
        let mut ids = Vec::with_capacity(parsed.friendslist.friends.len());
        for entry in parsed.friendslist.friends {
            let id = entry.steamid.parse().map_err(|_| {
                ProviderError::Data(format!("{identity}: bad steamid {:?}", entry.steamid))
            })?;
            ids.push(PlayerId(id));
        }
        Ok(FriendList::Public(ids))
    }
}

impl PlaytimeProvider for LiveClient {
    fn snapshot_playtimes(
        &self,
        players: &[PlayerId],
        day: NaiveDate,
    ) -> Result<Vec<PlaytimeSnapshot>, ProviderError> {
        let mut out = Vec::new();
        for &player in players {
            for (game, playtime_forever_minutes) in self.owned_games(player)? {
                out.push(PlaytimeSnapshot {
                    player,
                    game,
                    day,
                    playtime_forever_minutes,
                });
            }
        }
        Ok(out)
    }
}
