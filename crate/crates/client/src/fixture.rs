//! Fixture-backed provider: fully deterministic, fully offline.
//!
//! Layout under the fixture root:
//! - `friends/<playerid>.json` — JSON array of friend ids, or
//!   `{"private": true}` for a private profile;
//! - `playtime/<YYYY-MM-DD>/<playerid>.json` — array of
//!   `{"game_id", "playtime_forever_minutes"}` objects. A missing playtime
//!   file means the player owns no games that day.

use crate::{PlaytimeProvider, PlaytimeSnapshot};
use chrono::NaiveDate;
use serde::Deserialize;
use std::path::PathBuf;
use steamnet_core::ids::PlayerId;
use steamnet_core::sampling::{FriendList, FriendProvider, ProviderError};

#[derive(Debug, Clone)]
pub struct FixtureProvider {
    root: PathBuf,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FriendsFile {
    Private { private: bool },
    Ids(Vec<u64>),
}

#[derive(Deserialize)]
struct PlaytimeEntry {
    game_id: u64,
    playtime_forever_minutes: u64,
}

impl FixtureProvider {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        FixtureProvider { root: root.into() }
    }

    pub fn root(&self) -> &PathBuf {
        &self.root
    }
}

impl FriendProvider for FixtureProvider {
    fn friends_of(&self, player: PlayerId) -> Result<FriendList, ProviderError> {
        let path = self.root.join("friends").join(format!("{player}.json"));
        let bytes = std::fs::read(&path).map_err(|e| {
            ProviderError::Data(format!("missing friends fixture {}: {e}", path.display()))
        })?;
        let parsed: FriendsFile = serde_json::from_slice(&bytes)
            .map_err(|e| ProviderError::Data(format!("bad fixture {}: {e}", path.display())))?;
        match parsed {
            FriendsFile::Private { private: true } => Ok(FriendList::Private),
            FriendsFile::Private { private: false } => Err(ProviderError::Data(format!(
                "fixture {} sets private=false; use a friend array instead",
                path.display()
            ))),
            FriendsFile::Ids(ids) => Ok(FriendList::Public(
                ids.into_iter().map(PlayerId).collect(),
            )),
        }
    }
}

impl PlaytimeProvider for FixtureProvider {
    fn snapshot_playtimes(
        &self,
        players: &[PlayerId],
        day: NaiveDate,
    ) -> Result<Vec<PlaytimeSnapshot>, ProviderError> {
        let mut out = Vec::new();
        for &player in players {
            let path = self
                .root
                .join("playtime")
                .join(day.format("%Y-%m-%d").to_string())
                .join(format!("{player}.json"));
            let bytes = match std::fs::read(&path) {
                Ok(bytes) => bytes,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => continue,
                Err(e) => {
                    return Err(ProviderError::Data(format!(
                        "unreadable fixture {}: {e}",
                        path.display()
                    )))
                }
            };
            let entries: Vec<PlaytimeEntry> = serde_json::from_slice(&bytes)
                .map_err(|e| ProviderError::Data(format!("bad fixture {}: {e}", path.display())))?;
            for entry in entries {
                out.push(PlaytimeSnapshot {
                    player,
                    game: steamnet_core::ids::GameId(entry.game_id),
                    day,
                    playtime_forever_minutes: entry.playtime_forever_minutes,
                });
            }
        }
        Ok(out)
    }
}
