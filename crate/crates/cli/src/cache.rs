//! Content-addressed result cache.
//!
//! Entries live in `<dir>/<sha256>.json` and hold the format-independent
//! JSON result of one command. A lookup trusts an entry only if it parses,
//! carries the current version stamp and repeats its own key; anything else
//! is deleted and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::input::canonical;

pub const VERSION_STAMP: &str = concat!("swfcalc ", env!("CARGO_PKG_VERSION"), " results/1");
pub const ENV_VAR: &str = "SWFCALC_CACHE";

pub fn default_dir() -> Option<PathBuf> {
    dirs::cache_dir().map(|d| d.join("swfcalc"))
}

/// Chooses the cache directory: flag, then environment, then platform default.
pub fn resolve_dir(flag: Option<PathBuf>, env: Option<String>) -> Option<PathBuf> {
    flag.or_else(|| env.filter(|s| !s.is_empty()).map(PathBuf::from))
        .or_else(default_dir)
}

pub fn key(material: &Value) -> String {
    hex::encode(Sha256::digest(canonical(material).as_bytes()))
}

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    pub warnings: Vec<String>,
}

impl Cache {
    pub fn disabled() -> Self {
        Self::default()
    }

    /// Opens (creating if needed) a cache in `dir`. An unusable directory
    /// yields a disabled cache and a warning.
    pub fn open(dir: &Path) -> Self {
        let probe =
            fs::create_dir_all(dir).and_then(|_| tempfile::NamedTempFile::new_in(dir).map(drop));
        match probe {
            Ok(()) => Self {
                dir: Some(dir.to_path_buf()),
                warnings: Vec::new(),
            },
            Err(e) => Self {
                dir: None,
                warnings: vec![format!(
                    "warning: cache directory {} is not writable ({e}); continuing without cache",
                    dir.display()
                )],
            },
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn entry_path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Looks `material` up, computing and storing the value on a miss.
    pub fn get_or_compute<E>(
        &mut self,
        material: &Value,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        let key = key(material);
        let Some(path) = self.entry_path(&key) else {
            return compute();
        };
        if let Some(v) = read_entry(&path, &key) {
            return Ok(v);
        }
        if path.exists() {
            let _ = fs::remove_file(&path);
        }
        let value = compute()?;
        if let Err(e) = self.write_entry(&path, &key, &value) {
            self.warnings.push(format!(
                "warning: could not write cache entry {} ({e})",
                path.display()
            ));
        }
        Ok(value)
    }

    fn write_entry(&self, path: &Path, key: &str, value: &Value) -> std::io::Result<()> {
        let dir = path.parent().expect("entries live in a directory");
        let entry = json!({ "version": VERSION_STAMP, "key": key, "value": value });
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Number of entries and their total size in bytes.
    pub fn stats(&self) -> std::io::Result<(usize, u64)> {
        let mut count = 0;
        let mut bytes = 0;
        for path in self.entries()? {
            count += 1;
            bytes += fs::metadata(&path)?.len();
        }
        Ok((count, bytes))
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> std::io::Result<usize> {
        let entries = self.entries()?;
        for path in &entries {
            fs::remove_file(path)?;
        }
        Ok(entries.len())
    }

    fn entries(&self) -> std::io::Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for item in fs::read_dir(dir)? {
            let path = item?.path();
            if path.extension().is_some_and(|e| e == "json") && path.is_file() {
                out.push(path);
            }
        }
        out.sort();
        Ok(out)
    }
}

fn read_entry(path: &Path, key: &str) -> Option<Value> {
    let bytes = fs::read(path).ok()?;
    let mut entry: Value = serde_json::from_slice(&bytes).ok()?;
    let obj = entry.as_object_mut()?;
    if obj.get("version")?.as_str()? != VERSION_STAMP || obj.get("key")?.as_str()? != key {
        return None;
    }
    obj.remove("value")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miss_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::open(dir.path());
        let m = json!({"command": "x"});
        let mut calls = 0;
        for _ in 0..2 {
            let v = c
                .get_or_compute::<()>(&m, || {
                    calls += 1;
                    Ok(json!({"answer": 42}))
                })
                .unwrap();
            assert_eq!(v["answer"], 42);
        }
        assert_eq!(calls, 1);
        assert_eq!(c.stats().unwrap().0, 1);
        assert_eq!(c.clear().unwrap(), 1);
        assert_eq!(c.stats().unwrap().0, 0);
    }

    #[test]
    fn corrupt_and_stale_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::open(dir.path());
        let m = json!({"command": "y"});
        let path = c.entry_path(&key(&m)).unwrap();
        for bad in [
            "{\"version\":".to_string(),
            json!({"version": "old", "key": key(&m), "value": 1}).to_string(),
            json!({"version": VERSION_STAMP, "key": "other", "value": 1}).to_string(),
        ] {
            fs::write(&path, bad).unwrap();
            let v = c.get_or_compute::<()>(&m, || Ok(json!(7))).unwrap();
            assert_eq!(v, json!(7));
            assert_eq!(read_entry(&path, &key(&m)), Some(json!(7)));
        }
    }

    #[test]
    fn key_ignores_layout_and_order() {
        let a: Value = serde_json::from_str(r#"{"a": 1, "b": [1, 2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"b":[1,2],"a":1}"#).unwrap();
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn resolution_order() {
        let flag = Some(PathBuf::from("/f"));
        assert_eq!(resolve_dir(flag.clone(), Some("/e".into())), flag);
        assert_eq!(
            resolve_dir(None, Some("/e".into())),
            Some(PathBuf::from("/e"))
        );
    }

    #[test]
    fn unwritable_directory_disables() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        fs::write(&file, "").unwrap();
        let c = Cache::open(&file.join("sub"));
        assert!(c.dir().is_none());
        assert_eq!(c.warnings.len(), 1);
    }
}
