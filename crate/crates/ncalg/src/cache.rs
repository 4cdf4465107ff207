//! On-disk cache of centralizer reports: plain JSON files named by a
//! content hash of the inputs, written atomically so a cache hit always
//! reproduces the stored bytes exactly.

use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

pub const ENV_VAR: &str = "NCALG_CACHE";

/// Stable key for one centralizer computation. The artifact version is
/// part of the hash so stale layouts never leak across releases.
pub fn cache_key(canonical_f: &str, field_spec: &str, d: usize) -> String {
    let mut h = Sha256::new();
    h.update(canonical_f.as_bytes());
    h.update([0]);
    h.update(field_spec.as_bytes());
    h.update([0]);
    h.update(d.to_string().as_bytes());
    h.update([0]);
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Directory to use: the explicit flag wins, then the environment
/// variable; `None` disables caching.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    std::env::var_os(ENV_VAR).map(PathBuf::from)
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Stored bytes for `key`, if present.
pub fn lookup(dir: &Path, key: &str) -> Option<Vec<u8>> {
    fs::read(entry_path(dir, key)).ok()
}

/// Write `bytes` under `key`: temp file in the same directory, then
/// rename, so concurrent readers never observe a half-written entry.
pub fn store(dir: &Path, key: &str, bytes: &[u8]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("create {}: {e}", dir.display())))?;
    let tmp = dir.join(format!(".tmp-{}-{key}", std::process::id()));
    fs::write(&tmp, bytes).map_err(|e| Error::Cache(format!("write {}: {e}", tmp.display())))?;
    let dest = entry_path(dir, key);
    fs::rename(&tmp, &dest).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Cache(format!("rename into {}: {e}", dest.display()))
    })?;
    Ok(())
}
