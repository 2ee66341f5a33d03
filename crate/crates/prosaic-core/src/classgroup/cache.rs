use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::class_group_of_prime;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Entry {
    pub h: u64,
    pub h2: u64,
}

impl H2Entry {
    fn consistent(&self) -> bool {
        self.h > 0 && self.h2.is_power_of_two() && self.h2 == 1 << self.h.trailing_zeros()
    }
}

/// Write-once store of `(h, h₂)` per prime, optionally backed by a JSON file.
///
/// Readers share a lock; commits are serialized. An entry is never replaced: a
/// recomputation that disagrees with the stored value is reported as poisoning.
#[derive(Debug, Default)]
pub struct H2Cache {
    path: Option<PathBuf>,
    verify_hits: bool,
    entries: RwLock<BTreeMap<u64, H2Entry>>,
    flush_lock: Mutex<()>,
}

impl H2Cache {
    pub fn in_memory() -> Self {
        H2Cache::default()
    }

    /// Loads the cache at `path`; a missing file starts empty, an unreadable one is an error.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = if path.exists() {
            parse(&fs::read_to_string(&path)?)?
        } else {
            BTreeMap::new()
        };
        Ok(H2Cache {
            path: Some(path),
            verify_hits: false,
            entries: RwLock::new(entries),
            flush_lock: Mutex::new(()),
        })
    }

    /// Recompute on every hit and compare with the stored value.
    pub fn with_verification(mut self, on: bool) -> Self {
        self.verify_hits = on;
        self
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, p: u64) -> Option<H2Entry> {
        self.entries.read().expect("cache lock").get(&p).copied()
    }

    pub fn get_or_compute(&self, p: u64) -> Result<H2Entry> {
        if let Some(stored) = self.get(p) {
            if self.verify_hits {
                let fresh = compute(p)?;
                if fresh != stored {
                    return Err(poisoned(p, stored, fresh));
                }
            }
            return Ok(stored);
        }
        let fresh = compute(p)?;
        self.commit(p, fresh)?;
        Ok(fresh)
    }

    /// Inserts an entry; re-inserting the same value is a no-op, a different one is an error.
    pub fn commit(&self, p: u64, entry: H2Entry) -> Result<()> {
        let mut map = self.entries.write().expect("cache lock");
        match map.get(&p) {
            Some(stored) if *stored != entry => Err(poisoned(p, *stored, entry)),
            Some(_) => Ok(()),
            None => {
                map.insert(p, entry);
                Ok(())
            }
        }
    }

    /// Writes the file atomically (temporary file, then rename).
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let _guard = self.flush_lock.lock().expect("flush lock");
        let text = {
            let map = self.entries.read().expect("cache lock");
            let mut obj = Map::new();
            for (p, e) in map.iter() {
                obj.insert(
                    p.to_string(),
                    serde_json::to_value(e).expect("entry is serializable"),
                );
            }
            serde_json::to_string_pretty(&Value::Object(obj)).expect("map is serializable")
        };
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn compute(p: u64) -> Result<H2Entry> {
    let g = class_group_of_prime(p)?;
    Ok(H2Entry { h: g.h, h2: g.h2 })
}

fn poisoned(p: u64, stored: H2Entry, computed: H2Entry) -> Error {
    Error::CachePoisoned {
        p,
        stored: format!("h={} h2={}", stored.h, stored.h2),
        computed: format!("h={} h2={}", computed.h, computed.h2),
    }
}

fn parse(text: &str) -> Result<BTreeMap<u64, H2Entry>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::CacheCorrupt(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::CacheCorrupt("top level is not an object".into()))?;
    let mut out = BTreeMap::new();
    for (k, v) in obj {
        let p: u64 = k
            .parse()
            .map_err(|_| Error::CacheCorrupt(format!("key {k:?} is not a decimal prime")))?;
        let e: H2Entry = serde_json::from_value(v.clone())
            .map_err(|e| Error::CacheCorrupt(format!("entry for {k}: {e}")))?;
        if !e.consistent() {
            return Err(Error::CacheCorrupt(format!(
                "entry for {k} has h2 = {} inconsistent with h = {}",
                e.h2, e.h
            )));
        }
        out.insert(p, e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h2.json");
        let cache = H2Cache::open(&path).unwrap();
        assert_eq!(cache.get_or_compute(41).unwrap(), H2Entry { h: 8, h2: 8 });
        assert_eq!(cache.get_or_compute(1201).unwrap().h2, 16);
        cache.flush().unwrap();
        let again = H2Cache::open(&path).unwrap().with_verification(true);
        assert_eq!(again.len(), 2);
        assert_eq!(again.get_or_compute(41).unwrap(), H2Entry { h: 8, h2: 8 });
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h2.json");
        fs::write(&path, "{\"41\": {\"h\": 8").unwrap();
        assert!(matches!(H2Cache::open(&path), Err(Error::CacheCorrupt(_))));
        fs::write(&path, "{\"41\": {\"h\": 8, \"h2\": 3}}").unwrap();
        assert!(matches!(H2Cache::open(&path), Err(Error::CacheCorrupt(_))));
        fs::write(&path, "{\"x\": {\"h\": 8, \"h2\": 8}}").unwrap();
        assert!(matches!(H2Cache::open(&path), Err(Error::CacheCorrupt(_))));
    }

    #[test]
    fn poisoned_entry_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h2.json");
        // structurally valid, numerically wrong
        fs::write(&path, "{\"41\": {\"h\": 16, \"h2\": 16}}").unwrap();
        let cache = H2Cache::open(&path).unwrap().with_verification(true);
        assert!(matches!(
            cache.get_or_compute(41),
            Err(Error::CachePoisoned { .. })
        ));
        let cache = H2Cache::in_memory();
        cache.commit(41, H2Entry { h: 8, h2: 8 }).unwrap();
        assert!(cache.commit(41, H2Entry { h: 8, h2: 8 }).is_ok());
        assert!(cache.commit(41, H2Entry { h: 16, h2: 16 }).is_err());
    }
}
