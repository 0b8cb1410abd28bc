//! On-disk cache of Betti tables keyed by a content hash of `(G(I), p)`.
//!
//! Entries are written to a temporary file and renamed into place. A lookup
//! that finds an unreadable entry, or one whose embedded key disagrees with
//! its file name, deletes it and reports a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::monomial::MonomialIdeal;
use crate::oracle::{betti_table, BettiTable, FieldSpec};
use crate::Limits;

pub const CACHE_ENV: &str = "PATHIDEAL_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".pathideal-cache";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    table: BettiTable,
}

#[derive(Debug, Default)]
pub struct BettiCache {
    dir: Option<PathBuf>,
    disabled: AtomicBool,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

/// Hex SHA-256 of the ambient size, characteristic and sorted generators.
pub fn cache_key(ideal: &MonomialIdeal, field: FieldSpec) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "ambient={};char={};",
        ideal.ambient(),
        field.characteristic()
    ));
    for g in ideal.generators() {
        for e in g.exponents() {
            h.update(e.to_le_bytes());
        }
        h.update(b";");
    }
    hex::encode(h.finalize())
}

impl BettiCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        BettiCache {
            dir,
            ..BettiCache::default()
        }
    }

    /// No caching at all.
    pub fn disabled() -> Self {
        BettiCache::new(None)
    }

    /// `$PATHIDEAL_CACHE`, falling back to `.pathideal-cache/`.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn active_dir(&self) -> Option<&Path> {
        if self.disabled.load(Ordering::Relaxed) {
            return None;
        }
        self.dir.as_deref()
    }

    fn disable(&self, why: &str) {
        if !self.disabled.swap(true, Ordering::Relaxed) {
            log::warn!("cache disabled: {why}");
        }
    }

    fn path_for(dir: &Path, key: &str) -> PathBuf {
        dir.join(format!("{key}.json"))
    }

    pub fn lookup(&self, key: &str) -> Option<BettiTable> {
        let dir = self.active_dir()?;
        let path = Self::path_for(dir, key);
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice::<Entry>(&bytes) {
            Ok(e) if e.key == key => Some(e.table),
            _ => {
                log::info!("evicting corrupted cache entry {}", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn store(&self, key: &str, table: &BettiTable) {
        let Some(dir) = self.active_dir() else {
            return;
        };
        let entry = Entry {
            key: key.to_string(),
            table: table.clone(),
        };
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(&serde_json::to_vec(&entry)?)?;
            tmp.flush()?;
            tmp.persist(Self::path_for(dir, key)).map_err(|e| e.error)?;
            Ok(())
        };
        if let Err(e) = write() {
            self.disable(&format!("{}: {e}", dir.display()));
        }
    }

    /// Betti table of `ideal`, served from the cache when possible.
    pub fn betti_table(
        &self,
        ideal: &MonomialIdeal,
        field: FieldSpec,
        limits: &Limits,
    ) -> Result<BettiTable> {
        if self.active_dir().is_none() {
            return betti_table(ideal, field, limits);
        }
        let key = cache_key(ideal, field);
        if let Some(t) = self.lookup(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(t);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let table = betti_table(ideal, field, limits)?;
        self.store(&key, &table);
        Ok(table)
    }
}
