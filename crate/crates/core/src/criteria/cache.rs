//! Content-addressed report cache: one JSON file per request, written to a
//! temporary file and renamed into place.

use super::report::{CriterionReport, Request, VERSION};
use crate::error::{IflError, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

pub const CACHE_ENV: &str = "IFL_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".ifl-cache";

static WRITES: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub created: u64,
    pub report: CriterionReport,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$IFL_CACHE_DIR`, or `.ifl-cache/`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_DIR.into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(req: &Request) -> Result<String> {
        let canon = serde_json::to_string(&serde_json::to_value(req)?)?;
        let mut h = Sha256::new();
        h.update(canon.as_bytes());
        h.update(b"\0");
        h.update(VERSION.as_bytes());
        Ok(hex::encode(h.finalize()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A cached report for exactly this request and engine version.
    pub fn get(&self, req: &Request) -> Result<Option<CriterionReport>> {
        let key = Self::key(req)?;
        let text = match fs::read_to_string(self.path(&key)) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let Ok(entry) = serde_json::from_str::<CacheEntry>(&text) else {
            return Ok(None);
        };
        if entry.key != key || entry.version != VERSION || entry.report.request != *req {
            return Ok(None);
        }
        Ok(Some(entry.report))
    }

    pub fn put(&self, report: &CriterionReport) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let key = Self::key(&report.request)?;
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_err(|e| IflError::Computation(e.to_string()))?;
        let entry = CacheEntry {
            key: key.clone(),
            version: VERSION.to_string(),
            created: created.as_secs(),
            report: report.clone(),
        };
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.{}.tmp",
            std::process::id(),
            created.subsec_nanos(),
            WRITES.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_string(&serde_json::to_value(&entry)?)?)?;
        let dest = self.path(&key);
        fs::rename(&tmp, &dest)?;
        Ok(dest)
    }
}
