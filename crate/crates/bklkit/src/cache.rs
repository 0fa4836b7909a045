// SPDX-License-Identifier: MIT OR Apache-2.0
//! Content-addressed on-disk cache for computed results.
//!
//! A [`CacheKey`] is the canonical JSON encoding of everything that
//! determines a result; its SHA-256 digest names a file
//! `<dir>/<h0h1>/<h2h3>/<hex>.json` holding the result's JSON text. Writes go
//! to a temporary file in the same directory and are renamed into place, so
//! concurrent writers never expose a partial file. Changing
//! [`SCHEMA_VERSION`] changes every key, so stale entries are simply missed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{BklError, Result};

/// Version of the cached JSON layouts; part of every key.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "BKLKIT_CACHE";

/// Everything that determines a cached result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheKey {
    /// Layout version.
    pub schema: u32,
    /// Which computation (`"bkl"` or `"char"`).
    pub command: String,
    /// The sign sequence.
    pub b: String,
    /// Explicit window level, or `None` for the automatic choice.
    pub window: Option<i32>,
    /// Wedge specification (`"none"`, `"V:2"`, `"partition:V:2,1"`, ...).
    pub wedge: String,
    /// Basis or character kind.
    pub kind: String,
    /// Column index or highest weight.
    pub index: String,
}

impl CacheKey {
    /// A key at the current schema version.
    pub fn new(command: &str, b: &str, window: Option<i32>, wedge: &str, kind: &str, index: &str) -> Self {
        CacheKey {
            schema: SCHEMA_VERSION,
            command: command.into(),
            b: b.into(),
            window,
            wedge: wedge.into(),
            kind: kind.into(),
            index: index.into(),
        }
    }

    /// Canonical JSON encoding (fields in declaration order, no whitespace).
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("cache keys serialize")
    }

    /// Lower-case hex SHA-256 of the canonical encoding.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

/// A cache rooted at a directory.
#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    /// A cache rooted at `root` (created lazily on first write).
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    /// The cache selected by the environment variable, falling back to
    /// `dir`; `None` when neither is given.
    pub fn from_env_or(dir: Option<&Path>) -> Option<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => Some(Cache::new(v)),
            _ => dir.map(Cache::new),
        }
    }

    /// Root directory.
    pub fn root(&self) -> &Path {
        &self.root
    }

    /// File holding the entry for `key`.
    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        let h = key.digest();
        self.root.join(&h[0..2]).join(&h[2..4]).join(format!("{h}.json"))
    }

    /// The stored JSON text for `key`, if present.
    pub fn get(&self, key: &CacheKey) -> Result<Option<String>> {
        match fs::read_to_string(self.path_for(key)) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Store `json` for `key` atomically.
    pub fn put(&self, key: &CacheKey, json: &str) -> Result<PathBuf> {
        let path = self.path_for(key);
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(json.as_bytes())?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| BklError::Io(e.to_string()))?;
        Ok(path)
    }

    /// Return the cached text for `key`, or compute, store, and return it.
    /// The flag is true on a cache hit.
    pub fn get_or_compute<F>(&self, key: &CacheKey, compute: F) -> Result<(String, bool)>
    where
        F: FnOnce() -> Result<String>,
    {
        if let Some(s) = self.get(key)? {
            return Ok((s, true));
        }
        let s = compute()?;
        self.put(key, &s)?;
        Ok((s, false))
    }
}
