//! Content-addressed on-disk cache of exact results.
//!
//! Each entry is one JSON file named by the SHA-256 of its key. The file
//! records the schema version, the key and a checksum of the payload; any
//! mismatch is reported as [`Lookup::Corrupt`] and the caller recomputes.
//! Writes go to a temporary file in the same directory followed by a rename,
//! so readers only ever see complete entries.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema: u32,
    key: String,
    checksum: String,
    payload: String,
}

#[derive(Debug, PartialEq)]
pub enum Lookup {
    Hit(serde_json::Value),
    Miss,
    /// Unreadable, truncated, tampered or from another schema version.
    Corrupt(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
    schema: u32,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        Self::with_schema(dir, SCHEMA_VERSION)
    }

    pub fn with_schema(dir: &Path, schema: u32) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf(), schema })
    }

    /// Canonical key string: schema, field, kind, parameters, trace bound.
    pub fn key(&self, d: i64, kind: &str, params: &[(&str, i64)], trace_bound: i64) -> String {
        let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("v{}|D={d}|{kind}|{}|N={trace_bound}", self.schema, p.join(","))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(key.as_bytes())))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let path = self.path(key);
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        let env: Envelope = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        if env.schema != self.schema {
            return Lookup::Corrupt(format!("{}: schema {} != {}", path.display(), env.schema, self.schema));
        }
        if env.key != key {
            return Lookup::Corrupt(format!("{}: key mismatch", path.display()));
        }
        if sha256_hex(env.payload.as_bytes()) != env.checksum {
            return Lookup::Corrupt(format!("{}: checksum mismatch", path.display()));
        }
        match serde_json::from_str(&env.payload) {
            Ok(v) => Lookup::Hit(v),
            Err(e) => Lookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    pub fn put(&self, key: &str, value: &serde_json::Value) -> std::io::Result<()> {
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let payload = serde_json::to_string(value)?;
        let env = Envelope { schema: self.schema, key: key.to_string(), checksum: sha256_hex(payload.as_bytes()), payload };
        let target = self.path(key);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}-{}",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed),
            target.file_name().and_then(|s| s.to_str()).unwrap_or("entry")
        ));
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&env)?.as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, &target)
    }

    /// Cached value, or `compute()` stored on a miss. Corrupt entries are
    /// reported through `warn` and overwritten.
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        warn: &mut dyn FnMut(String),
        compute: impl FnOnce() -> Result<serde_json::Value, E>,
    ) -> Result<serde_json::Value, E> {
        match self.get(key) {
            Lookup::Hit(v) => return Ok(v),
            Lookup::Miss => {}
            Lookup::Corrupt(why) => warn(format!("CacheCorrupt: {why}; recomputing")),
        }
        let v = compute()?;
        if let Err(e) = self.put(key, &v) {
            warn(format!("cache write failed: {e}"));
        }
        Ok(v)
    }

    /// Path of the file backing `key` (for diagnostics and tests).
    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.path(key)
    }
}
