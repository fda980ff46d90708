//! Content-addressed JSON file cache.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hecke_core::ParamBinding;

pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: String,
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Key over (m, n, q, kind). The q values enter as exact fraction strings.
pub fn cache_key(b: &ParamBinding, kind: &str) -> String {
    let q: Vec<String> = b.q.iter().map(|v| v.to_string()).collect();
    sha256_hex(format!("hecke-cache-v1|{}|{}|{}|{}", b.m, b.n, q.join(","), kind).as_bytes())
}

impl Cache {
    pub fn new(dir: &Path) -> io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path(&self, b: &ParamBinding, kind: &str) -> PathBuf {
        self.dir.join(format!("{kind}-{}.json", cache_key(b, kind)))
    }

    /// A stored value, or None if missing, unreadable or corrupt.
    pub fn load<T: DeserializeOwned>(&self, b: &ParamBinding, kind: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(b, kind)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.key != cache_key(b, kind) || entry.checksum != sha256_hex(entry.payload.as_bytes()) {
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    pub fn store<T: Serialize>(&self, b: &ParamBinding, kind: &str, value: &T) -> io::Result<()> {
        let payload = serde_json::to_string(value).map_err(io::Error::other)?;
        let entry = Entry { key: cache_key(b, kind), checksum: sha256_hex(payload.as_bytes()), payload };
        let path = self.path(b, kind);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry).map_err(io::Error::other)?)?;
        fs::rename(tmp, path)
    }

    /// Loads `kind`, or computes and stores it. The flag reports a cache hit.
    pub fn get_or_compute<T, E>(
        &self,
        b: &ParamBinding,
        kind: &str,
        produce: impl FnOnce() -> Result<T, E>,
    ) -> Result<(T, bool), E>
    where
        T: Serialize + DeserializeOwned,
        E: From<io::Error>,
    {
        if let Some(v) = self.load(b, kind) {
            return Ok((v, true));
        }
        let v = produce()?;
        self.store(b, kind, &v)?;
        Ok((v, false))
    }
}
