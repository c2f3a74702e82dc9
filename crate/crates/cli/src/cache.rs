//! Append-only record cache: one `key=<sha256>` prefixed record per line.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use bsd_core::record::{AnalysisRecord, NormalFormLabel, SurfaceSpec};
use sha2::{Digest, Sha256};

/// Hash of the canonical specification and the θ label.
pub fn spec_key(spec: &SurfaceSpec, label: NormalFormLabel) -> String {
    let mut h = Sha256::new();
    h.update(spec.canonical().as_bytes());
    h.update(match label {
        NormalFormLabel::Standard => b"\tlabel=theta".as_slice(),
        NormalFormLabel::Conjugate => b"\tlabel=theta-bar".as_slice(),
    });
    hex::encode(h.finalize())
}

pub fn cache_line(key: &str, rec: &AnalysisRecord) -> String {
    format!("key={}\t{}\n", key, rec.canonical_line())
}

/// Splits a cache line into its key and record.
pub fn parse_cache_line(line: &str) -> Option<(String, AnalysisRecord)> {
    let rest = line.strip_prefix("key=")?;
    let (key, record) = rest.split_once('\t')?;
    let rec = AnalysisRecord::parse_line(record).ok()?;
    Some((key.to_string(), rec))
}

pub struct Cache {
    path: PathBuf,
    keys: HashSet<String>,
    file: File,
}

impl Cache {
    pub fn open(path: &Path) -> io::Result<Cache> {
        let mut keys = HashSet::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if let Some(k) = line.strip_prefix("key=").and_then(|r| r.split('\t').next()) {
                    keys.insert(k.to_string());
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Cache {
            path: path.to_path_buf(),
            keys,
            file,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn contains(&self, key: &str) -> bool {
        self.keys.contains(key)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Writes the whole line with one call.
    pub fn append(&mut self, key: &str, rec: &AnalysisRecord) -> io::Result<()> {
        let line = cache_line(key, rec);
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        self.keys.insert(key.to_string());
        Ok(())
    }
}
