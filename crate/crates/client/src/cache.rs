//! On-disk response cache keyed by request identity (endpoint plus
//! parameters, never credentials).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::PathBuf;

/// A cached HTTP exchange: status plus the exact body bytes, so replays are
/// byte-identical to the original response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedResponse {
    pub status: u16,
    pub body: String,
}

#[derive(Debug)]
pub struct ResponseCache {
    dir: PathBuf,
}

impl ResponseCache {
    pub fn new(dir: PathBuf) -> std::io::Result<Self> {
        std::fs::create_dir_all(&dir)?;
        Ok(ResponseCache { dir })
    }

    /// Cache key for a request identity string.
    pub fn key(identity: &str) -> String {
        let digest = Sha256::digest(identity.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<CachedResponse> {
        let bytes = std::fs::read(self.path(key)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Write-temp-then-rename so readers never observe partial entries.
    pub fn put(&self, key: &str, response: &CachedResponse) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&serde_json::to_vec(response)?)?;
        tmp.persist(self.path(key))
            .map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResponseCache::new(dir.path().join("cache")).unwrap();
        let key = ResponseCache::key("GetFriendList?steamid=42");
        assert!(cache.get(&key).is_none());
        let response = CachedResponse {
            status: 200,
            body: r#"{"friendslist":{"friends":[]}}"#.to_string(),
        };
        cache.put(&key, &response).unwrap();
        assert_eq!(cache.get(&key).unwrap(), response);
    }

    #[test]
    fn keys_exclude_nothing_but_identity() {
        assert_eq!(ResponseCache::key("a"), ResponseCache::key("a"));
        assert_ne!(ResponseCache::key("a"), ResponseCache::key("b"));
    }
}
