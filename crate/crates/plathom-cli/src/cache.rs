//! Content-addressed result cache.
//!
//! Entries live at `<dir>/<key>.json` where the key hashes the tool version and
//! the canonical request. The first line of an entry is the SHA-256 of the
//! rest; an entry that fails the checksum or does not parse is a miss.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::report::RunResult;

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `PLATHOM_CACHE_DIR`, else the user cache directory.
    pub fn from_env() -> Option<Self> {
        if let Some(d) = std::env::var_os("PLATHOM_CACHE_DIR") {
            return Some(Self::new(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Self::new(Path::new(&d).join("plathom")));
        }
        std::env::var_os("HOME").map(|h| Self::new(Path::new(&h).join(".cache").join("plathom")))
    }

    pub fn key(request: &str) -> String {
        sha256_hex(format!("plathom {}\n{request}", env!("CARGO_PKG_VERSION")).as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<RunResult> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let (sum, body) = text.split_once('\n')?;
        if sum != sha256_hex(body.as_bytes()) {
            log::warn!("cache entry {key} failed its checksum; recomputing");
            return None;
        }
        match RunResult::from_json(body) {
            Ok(r) => Some(r),
            Err(e) => {
                log::warn!("cache entry {key} does not parse ({e}); recomputing");
                None
            }
        }
    }

    /// Best effort: a cache that cannot be written only costs time.
    pub fn put(&self, key: &str, r: &RunResult) {
        let body = r.to_json();
        let text = format!("{}\n{body}", sha256_hex(body.as_bytes()));
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        let res = fs::create_dir_all(&self.dir)
            .and_then(|_| fs::write(&tmp, text))
            .and_then(|_| fs::rename(&tmp, self.path(key)));
        if let Err(e) = res {
            log::warn!("could not write cache entry {key}: {e}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{Meta, RunResult};

    fn result() -> RunResult {
        RunResult {
            dims: vec![],
            checks: vec![],
            meta: Meta { command: "kh".into(), input: None, input_hash: None, params: Default::default(), version: "0".into() },
        }
    }

    #[test]
    fn hit_miss_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        let k = Cache::key("kh n=1; word=[]");
        assert!(c.get(&k).is_none());
        c.put(&k, &result());
        assert_eq!(c.get(&k), Some(result()));
        let p = c.path(&k);
        let text = fs::read_to_string(&p).unwrap().replace("\"kh\"", "\"e2\"");
        fs::write(&p, text).unwrap();
        assert!(c.get(&k).is_none());
        fs::write(&p, "garbage").unwrap();
        assert!(c.get(&k).is_none());
    }

    #[test]
    fn keys_depend_on_the_request() {
        assert_ne!(Cache::key("a"), Cache::key("b"));
        assert_eq!(Cache::key("a").len(), 64);
    }
}
