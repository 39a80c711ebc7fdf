//! Content-addressed result cache.
//!
//! Keys are canonical text (tool version, command, module expression, ring,
//! flags); files are named by the SHA-256 of the key and written with a
//! temp-file-then-rename dance so concurrent writers never expose a partial
//! file.  A corrupted or mismatched file is treated as a miss with a warning
//! on standard error.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Name of the environment variable that overrides the `--cache-dir` flag.
pub const CACHE_ENV: &str = "GAMMACOH_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// A cache that never hits and never writes.
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    /// Resolve the cache location: the environment variable wins over the
    /// command-line flag; with neither present, caching is disabled.
    pub fn resolve(flag: Option<&Path>) -> Cache {
        let dir = env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| flag.map(Path::to_path_buf));
        Cache { dir }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn file_for(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let digest = Sha256::digest(key.as_bytes());
        let mut name = String::with_capacity(69);
        for byte in digest {
            name.push_str(&format!("{byte:02x}"));
        }
        name.push_str(".json");
        Some(dir.join(name))
    }

    /// Look up the payload stored under `key`, if any.  The stored document
    /// must parse and must echo the key exactly; anything else is a miss.
    pub fn get(&self, key: &str) -> Option<Value> {
        let path = self.file_for(key)?;
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => return None,
        };
        let doc: Value = match serde_json::from_str(&text) {
            Ok(d) => d,
            Err(_) => {
                eprintln!(
                    "warning: cache file {} is corrupted; recomputing",
                    path.display()
                );
                return None;
            }
        };
        if doc.get("key").and_then(Value::as_str) != Some(key) {
            eprintln!(
                "warning: cache file {} does not match its key; recomputing",
                path.display()
            );
            return None;
        }
        doc.get("payload").cloned()
    }

    /// Store `payload` under `key`.  Failures are reported as warnings; the
    /// cache is an accelerator, never a correctness dependency.
    pub fn put(&self, key: &str, payload: &Value) {
        let Some(path) = self.file_for(key) else {
            return;
        };
        let dir = path.parent().expect("cache files live inside a directory");
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("warning: cannot create cache directory: {e}");
            return;
        }
        let doc = json!({ "key": key, "payload": payload });
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.subsec_nanos())
            .unwrap_or(0);
        let tmp = path.with_extension(format!("tmp.{}.{}", process::id(), nanos));
        let body = serde_json::to_string(&doc).expect("cache documents serialize");
        if let Err(e) = fs::write(&tmp, body) {
            eprintln!("warning: cannot write cache file: {e}");
            return;
        }
        if let Err(e) = fs::rename(&tmp, &path) {
            eprintln!("warning: cannot publish cache file: {e}");
            let _ = fs::remove_file(&tmp);
        }
    }
}

/// Canonical key text for one cacheable call: version and command up front,
/// then each identifying part on its own line.
pub fn cache_key(command: &str, parts: &[&str]) -> String {
    let mut key = format!("gammacoh/{}\n{command}", env!("CARGO_PKG_VERSION"));
    for p in parts {
        key.push('\n');
        key.push_str(p);
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_bit_identically() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache {
            dir: Some(dir.path().to_path_buf()),
        };
        let payload = json!({"shape": {"ring": "Q", "dim": 3}});
        let key = cache_key("compute", &["Sym(10,0)", "Q"]);
        assert!(cache.get(&key).is_none());
        cache.put(&key, &payload);
        assert_eq!(cache.get(&key), Some(payload));
    }

    #[test]
    fn distinct_keys_use_distinct_files() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache {
            dir: Some(dir.path().to_path_buf()),
        };
        cache.put(&cache_key("compute", &["Sym(2,0)", "Q"]), &json!(1));
        cache.put(&cache_key("compute", &["Sym(2,1)", "Q"]), &json!(2));
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
        assert_eq!(
            cache.get(&cache_key("compute", &["Sym(2,0)", "Q"])),
            Some(json!(1))
        );
    }

    #[test]
    fn corrupted_files_count_as_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache {
            dir: Some(dir.path().to_path_buf()),
        };
        let key = cache_key("les", &["Triv", "Q"]);
        cache.put(&key, &json!({"exact": true}));
        let file = cache.file_for(&key).unwrap();
        fs::write(&file, "{ not json").unwrap();
        assert!(cache.get(&key).is_none());
        // A healthy rewrite repairs the slot.
        cache.put(&key, &json!({"exact": true}));
        assert_eq!(cache.get(&key), Some(json!({"exact": true})));
    }

    #[test]
    fn environment_variable_wins_over_the_flag() {
        // Resolved lazily from the ambient environment: only assert the
        // flag-only and disabled paths here to keep the test hermetic.
        if env::var_os(CACHE_ENV).is_none() {
            let dir = tempfile::tempdir().unwrap();
            let cache = Cache::resolve(Some(dir.path()));
            assert!(cache.is_enabled());
            assert!(!Cache::resolve(None).is_enabled());
        }
    }
}
