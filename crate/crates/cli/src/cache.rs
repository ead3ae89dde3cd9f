//! On-disk result cache: one JSON document, rewritten atomically.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use hgs_core::{Error, Result};
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Bumped whenever an algorithm change could alter a cached value.
pub const ENGINE_VERSION: &str = concat!("hgs-engine/", env!("CARGO_PKG_VERSION"), "/1");

/// Fraction of hits recomputed under `--verify-cache`.
const VERIFY_RATE: f64 = 0.1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheRecord {
    pub value: serde_json::Value,
    pub timestamp: u64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    entries: BTreeMap<String, CacheRecord>,
}

pub struct Cache {
    path: Option<PathBuf>,
    file: CacheFile,
    dirty: bool,
    verify: bool,
}

impl Cache {
    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        Cache {
            path: None,
            file: CacheFile::default(),
            dirty: false,
            verify: false,
        }
    }

    pub fn open(path: &Path, verify: bool) -> Result<Self> {
        let file = match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("cache file {}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheFile::default(),
            Err(e) => return Err(Error::InvalidArgument(format!("cannot read cache {}: {e}", path.display()))),
        };
        Ok(Cache {
            path: Some(path.to_path_buf()),
            file,
            dirty: false,
            verify,
        })
    }

    pub fn key(op: &str, args: &str) -> String {
        format!("{ENGINE_VERSION}|{op}|{args}")
    }

    /// Cached value for `key`, or the result of `compute` (then stored).
    pub fn get_or_compute<T, F>(&mut self, key: &str, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned + PartialEq,
        F: FnOnce() -> Result<T>,
    {
        if self.path.is_none() {
            return compute();
        }
        if let Some(rec) = self.file.entries.get(key) {
            let cached: T = serde_json::from_value(rec.value.clone())
                .map_err(|e| Error::Parse(format!("cache entry `{key}`: {e}")))?;
            if self.verify && rand::thread_rng().gen_bool(VERIFY_RATE) {
                let fresh = compute()?;
                if fresh != cached {
                    return Err(Error::Consistency(format!("cache entry `{key}` differs from recomputation")));
                }
            }
            return Ok(cached);
        }
        let value = compute()?;
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        self.file.entries.insert(
            key.to_string(),
            CacheRecord {
                value: serde_json::to_value(&value).expect("cache values serialize"),
                timestamp,
            },
        );
        self.dirty = true;
        Ok(value)
    }

    /// Writes to a temporary file beside the target, then renames it over.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write cache {}: {e}", path.display()));
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        let text = serde_json::to_string_pretty(&self.file).expect("cache serializes");
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        self.dirty = false;
        Ok(())
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.file.entries.len()
    }

    /// Replaces a stored value; only used to exercise `--verify-cache`.
    #[cfg(test)]
    fn poison(&mut self, key: &str, value: serde_json::Value) {
        if let Some(rec) = self.file.entries.get_mut(key) {
            rec.value = value;
        }
    }
}
