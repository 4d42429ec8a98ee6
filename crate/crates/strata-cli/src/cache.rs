//! Append-only JSON-lines cache of computed classes.
//!
//! Each line holds one serialized class together with its key and the SHA-256
//! of the serialized class.  Loading validates the checksum and that the
//! class's ring matches its key; a bad line is reported and skipped, never
//! used.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use strata_ring::NumClass;
use thiserror::Error;

/// Environment variable overriding the cache location.
pub const CACHE_ENV: &str = "STRATA_CACHE";

/// Cache failures.
#[derive(Debug, Error)]
pub enum CacheError {
    /// A line failed validation; it is skipped.
    #[error("corrupt cache line {line}: {reason}")]
    CorruptCache {
        /// 1-based line number.
        line: usize,
        /// Why the line was rejected.
        reason: String,
    },
    /// The file could not be read or written.
    #[error("cache i/o on {path}: {source}")]
    Io {
        /// The cache file.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
}

/// Identifies one cached class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    /// Type name, as accepted by `--type`.
    #[serde(rename = "type")]
    pub type_name: String,
    /// Dimension of the projective space.
    pub n: u32,
    /// Basis of the stored class (`F` or `Q<k>`).
    pub basis: String,
    /// `lifted` or `minimal`.
    pub kind: String,
}

#[derive(Serialize, Deserialize)]
struct Line {
    key: CacheKey,
    class: serde_json::Value,
    sha256: String,
}

/// Hex SHA-256 of a class's canonical JSON.
pub fn class_checksum(class: &NumClass) -> String {
    hex::encode(Sha256::digest(class.to_json().as_bytes()))
}

/// A loaded cache file.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<CacheKey, NumClass>,
}

impl Cache {
    /// Default location: `$STRATA_CACHE`, else `$HOME/.cache/strata/classes.jsonl`.
    pub fn default_path() -> Option<PathBuf> {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return Some(PathBuf::from(p));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("strata").join("classes.jsonl"))
    }

    /// Loads the cache at `path` (a missing file is an empty cache).  Rejected
    /// lines are returned as warnings.
    pub fn load(path: impl Into<PathBuf>) -> Result<(Self, Vec<CacheError>), CacheError> {
        let path = path.into();
        let mut entries = BTreeMap::new();
        let mut warnings = Vec::new();
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(source) => return Err(CacheError::Io { path: path.display().to_string(), source }),
        };
        for (idx, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            match parse_line(raw) {
                Ok((key, class)) => {
                    entries.insert(key, class);
                }
                Err(reason) => warnings.push(CacheError::CorruptCache { line: idx + 1, reason }),
            }
        }
        Ok((Cache { path, entries }, warnings))
    }

    /// The cache file.
    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Valid entries, ordered by key.
    pub fn entries(&self) -> &BTreeMap<CacheKey, NumClass> {
        &self.entries
    }

    /// Looks up a class.
    pub fn get(&self, key: &CacheKey) -> Option<&NumClass> {
        self.entries.get(key)
    }

    /// Stores a class, appending one line to the file.
    pub fn put(&mut self, key: CacheKey, class: &NumClass) -> Result<(), CacheError> {
        let io = |source| CacheError::Io { path: self.path.display().to_string(), source };
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io)?;
        }
        let line = Line { key: key.clone(), class: class.to_json_value(), sha256: class_checksum(class) };
        let text = serde_json::to_string(&line).expect("cache line serializes");
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        writeln!(file, "{text}").map_err(io)?;
        self.entries.insert(key, class.clone());
        Ok(())
    }

    /// Deletes the cache file.
    pub fn clear(&mut self) -> Result<(), CacheError> {
        match fs::remove_file(&self.path) {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(CacheError::Io { path: self.path.display().to_string(), source }),
        }
        self.entries.clear();
        Ok(())
    }
}

fn parse_line(raw: &str) -> Result<(CacheKey, NumClass), String> {
    let line: Line = serde_json::from_str(raw).map_err(|e| format!("not a cache entry: {e}"))?;
    let class = NumClass::from_json_value(&line.class).map_err(|e| format!("bad class: {e}"))?;
    let sum = class_checksum(&class);
    if sum != line.sha256 {
        return Err(format!("checksum mismatch (stored {}, computed {sum})", line.sha256));
    }
    let spec = class.spec();
    if spec.n != line.key.n || spec.basis.to_string() != line.key.basis {
        return Err(format!("ring {spec} does not match key n={} basis={}", line.key.n, line.key.basis));
    }
    Ok((line.key, class))
}
