//! Append-only count cache: CSV with header `x,y,h,count`, read on startup,
//! new entries appended on save.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use friable_core::{Error, Result};

#[derive(Debug, Default)]
pub struct CountCache {
    map: HashMap<(u64, u64, u64), (u64, &'static str)>,
    fresh: Vec<((u64, u64, u64), u64)>,
    path: Option<PathBuf>,
}

impl CountCache {
    /// In-memory cache not backed by a file.
    pub fn ephemeral() -> Self {
        CountCache::default()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cache = CountCache {
            path: Some(path.to_path_buf()),
            ..Default::default()
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => {
                return Err(Error::Dataset(format!(
                    "cannot read cache {}: {e}",
                    path.display()
                )))
            }
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == "x,y,h,count" => {}
            Some((_, header)) => {
                return Err(Error::Dataset(format!(
                    "{}: expected header x,y,h,count got {header:?}",
                    path.display()
                )))
            }
            None => return Ok(cache),
        }
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Dataset(format!(
                    "{}:{}: malformed cache row",
                    path.display(),
                    lineno + 1
                )));
            }
            let mut vals = [0u64; 4];
            for (i, f) in fields.iter().enumerate() {
                vals[i] = f.parse().map_err(|_| {
                    Error::Dataset(format!(
                        "{}:{}: invalid integer {f:?}",
                        path.display(),
                        lineno + 1
                    ))
                })?;
            }
            cache.map.insert((vals[0], vals[1], vals[2]), (vals[3], "cache"));
        }
        Ok(cache)
    }

    /// Cached count plus the provenance of how it was obtained: `"cache"`
    /// for entries read from disk, the computing oracle's id otherwise.
    pub fn get(&self, x: u64, y: u64, h: u64) -> Option<(u64, &'static str)> {
        self.map.get(&(x, y, h)).copied()
    }

    pub fn insert(&mut self, x: u64, y: u64, h: u64, count: u64, provenance: &'static str) {
        if self.map.insert((x, y, h), (count, provenance)).is_none() {
            self.fresh.push(((x, y, h), count));
        }
    }

    /// Append newly computed entries to the backing file.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if self.fresh.is_empty() {
            return Ok(());
        }
        let exists = path.exists();
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::Dataset(format!("cannot open cache {}: {e}", path.display())))?;
        let io = |e: std::io::Error| Error::Dataset(format!("cache write failed: {e}"));
        if !exists {
            writeln!(file, "x,y,h,count").map_err(io)?;
        }
        for ((x, y, h), c) in self.fresh.drain(..) {
            writeln!(file, "{x},{y},{h},{c}").map_err(io)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_append() {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("friable_cache_{}.csv", std::process::id()));
        let _ = fs::remove_file(&path);

        let mut c = CountCache::load(&path).unwrap();
        assert_eq!(c.get(100, 3, 0), None);
        c.insert(100, 3, 0, 20, "sieve:divide-out");
        assert_eq!(c.get(100, 3, 0), Some((20, "sieve:divide-out")));
        c.save().unwrap();

        let c2 = CountCache::load(&path).unwrap();
        assert_eq!(c2.get(100, 3, 0), Some((20, "cache")));
        fs::remove_file(&path).ok();
    }

    #[test]
    fn rejects_malformed() {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("friable_cache_bad_{}.csv", std::process::id()));
        fs::write(&path, "wrong,header\n").unwrap();
        assert!(CountCache::load(&path).is_err());
        fs::write(&path, "x,y,h,count\n1,2\n").unwrap();
        assert!(CountCache::load(&path).is_err());
        fs::remove_file(&path).ok();
    }
}
