//! On-disk result cache for threshold computations.
//!
//! Entries live under `GALLAI_CACHE_DIR`, one JSON file per query, keyed by
//! a stable content hash of the query and search window. A stored witness
//! is re-checked against the query on read; entries that fail re-validation
//! are ignored and recomputed.

use std::path::PathBuf;

use anyhow::{Context, Result};
use serde_json::Value;

use gallai_core::coloring::EdgeColoring;
use gallai_core::search::{coloring_satisfies, RamseyQuery, RamseyResult, RamseyValue, SearchStats};

pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    /// Enabled iff `GALLAI_CACHE_DIR` is set and `--no-cache` was not
    /// passed.
    pub fn from_env(no_cache: bool) -> Self {
        let dir = if no_cache {
            None
        } else {
            std::env::var_os("GALLAI_CACHE_DIR").map(PathBuf::from)
        };
        ResultCache { dir }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn entry_path(&self, query: &RamseyQuery, n_min: usize, n_max: usize) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let key = serde_json::json!({
            "query": serde_json::to_value(query).ok()?,
            "n_min": n_min,
            "n_max": n_max,
        });
        Some(dir.join(format!("{:016x}.json", fnv64(key.to_string().as_bytes()))))
    }

    pub fn lookup(
        &self,
        query: &RamseyQuery,
        n_min: usize,
        n_max: usize,
    ) -> Result<Option<RamseyResult>> {
        let path = match self.entry_path(query, n_min, n_max) {
            Some(p) => p,
            None => return Ok(None),
        };
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let value: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(_) => return Ok(None),
        };
        Ok(decode_entry(&value, query).filter(|r| witness_still_valid(r, query)))
    }

    pub fn store(&self, result: &RamseyResult, n_min: usize, n_max: usize) -> Result<()> {
        let path = match self.entry_path(&result.query, n_min, n_max) {
            Some(p) => p,
            None => return Ok(()),
        };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating cache dir {}", dir.display()))?;
        }
        std::fs::write(&path, format!("{:#}\n", result.to_json()))
            .with_context(|| format!("writing cache entry {}", path.display()))?;
        Ok(())
    }
}

fn decode_entry(value: &Value, query: &RamseyQuery) -> Option<RamseyResult> {
    let stored_query: RamseyQuery = serde_json::from_value(value["query"].clone()).ok()?;
    if &stored_query != query {
        return None;
    }
    let result_value = if let Some(v) = value["value"].as_u64() {
        RamseyValue::Exact(v as usize)
    } else {
        let bracket = value["bracket"].as_array()?;
        RamseyValue::Bracket {
            lo: bracket.first()?.as_u64()? as usize,
            hi: bracket.get(1).and_then(|h| h.as_u64()).map(|h| h as usize),
        }
    };
    let witness = match value["witness"].as_str() {
        Some(text) => Some(EdgeColoring::parse(text).ok()?),
        None => None,
    };
    let stats: SearchStats = serde_json::from_value(value["stats"].clone()).unwrap_or_default();
    Some(RamseyResult {
        query: stored_query,
        value: result_value,
        witness,
        stats,
    })
}

/// The stored witness must still avoid every target at the order below the
/// value it certifies.
fn witness_still_valid(result: &RamseyResult, query: &RamseyQuery) -> bool {
    match &result.witness {
        None => true,
        Some(w) => {
            let expected_order = match result.value {
                RamseyValue::Exact(v) => v.checked_sub(1),
                RamseyValue::Bracket { lo, .. } => lo.checked_sub(1),
            };
            expected_order == Some(w.order()) && !coloring_satisfies(w, query).unwrap_or(true)
        }
    }
}

fn fnv64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
