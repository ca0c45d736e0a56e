//! Content-addressed store of finished reports.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "ULRICH_CACHE_DIR";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Key over the canonical spec, the command line and the tool version.
pub fn cache_key(spec_json: &str, command: &str) -> String {
    let mut h = Sha256::new();
    for part in [spec_json, command, env!("CARGO_PKG_VERSION")] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("ulrich");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("ulrich");
    }
    std::env::temp_dir().join("ulrich-cache")
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored report; unreadable entries count as misses.
    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str::<serde_json::Value>(&text).ok()?;
        Some(text)
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn put(&self, key: &str, report: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, report)?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}
