//! Enumeration of surface families with parallel analysis.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bsd_core::local::VerdictKind;
use bsd_core::record::{analyze_labelled, AnalysisRecord, NormalFormLabel, SurfaceSpec};
use rayon::prelude::*;

use crate::cache::{spec_key, Cache};

/// `lo..hi` (inclusive), a comma list, or a single integer.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = lo
            .trim()
            .parse()
            .with_context(|| format!("bad range start in `{}`", s))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .with_context(|| format!("bad range end in `{}`", s))?;
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .with_context(|| format!("bad integer `{}`", p))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SearchRanges {
    pub a2: Vec<i64>,
    pub a1: Vec<i64>,
    pub a0: Vec<i64>,
    pub trace: Vec<i64>,
    pub norm: Vec<i64>,
    pub d: Vec<i64>,
}

impl SearchRanges {
    /// All specifications in lexicographic order of the parameters.
    pub fn specs(&self) -> Vec<SurfaceSpec> {
        let mut out = Vec::new();
        for &a2 in &self.a2 {
            for &a1 in &self.a1 {
                for &a0 in &self.a0 {
                    for &t in &self.trace {
                        for &n in &self.norm {
                            for &d in &self.d {
                                if d != 0 {
                                    out.push(SurfaceSpec::new([a2, a1, a0], [t, n], d));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub ranges: SearchRanges,
    pub cache: Option<PathBuf>,
    pub jobs: usize,
    pub label: NormalFormLabel,
    /// Only print records with this verdict.
    pub verdict: Option<VerdictKind>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub enumerated: usize,
    pub invalid: usize,
    pub cached: usize,
    pub analyzed: usize,
    pub io_errors: usize,
}

const CHUNK: usize = 64;

/// Analyzes every valid specification not yet cached. Results are written in
/// enumeration order by the calling thread.
pub fn run_search(
    opts: &SearchOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(SearchStats, Vec<AnalysisRecord>)> {
    if opts.jobs == 0 {
        bail!("--jobs must be positive");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .context("thread pool")?;
    let mut cache = match &opts.cache {
        Some(p) => Some(Cache::open(p).with_context(|| format!("opening cache {}", p.display()))?),
        None => None,
    };
    let specs = opts.ranges.specs();
    let valid: Vec<bool> =
        pool.install(|| specs.par_iter().map(|s| s.normal_form().is_ok()).collect());
    let mut stats = SearchStats {
        enumerated: specs.len(),
        invalid: valid.iter().filter(|v| !**v).count(),
        ..Default::default()
    };
    let mut todo: Vec<(String, &SurfaceSpec)> = Vec::new();
    for (s, _) in specs.iter().zip(&valid).filter(|(_, v)| **v) {
        let key = spec_key(s, opts.label);
        if cache.as_ref().is_some_and(|c| c.contains(&key)) {
            stats.cached += 1;
        } else {
            todo.push((key, s));
        }
    }
    let mut records = Vec::new();
    for chunk in todo.chunks(CHUNK * opts.jobs) {
        let results: Vec<(String, bsd_core::Result<AnalysisRecord>)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(k, s)| (k.clone(), analyze_labelled(s, opts.label)))
                .collect()
        });
        for (key, res) in results {
            let rec = match res {
                Ok(rec) => rec,
                Err(_) => {
                    stats.invalid += 1;
                    continue;
                }
            };
            stats.analyzed += 1;
            if let Some(c) = cache.as_mut() {
                if let Err(e) = c.append(&key, &rec) {
                    stats.io_errors += 1;
                    writeln!(err, "cache write failed for {}: {}", key, e)?;
                }
            }
            if opts.verdict.is_none_or(|v| v == rec.verdict) {
                writeln!(out, "{}", rec.canonical_line())?;
            }
            records.push(rec);
        }
    }
    writeln!(
        err,
        "enumerated {}, analyzed {}, cached {}, invalid {}",
        stats.enumerated, stats.analyzed, stats.cached, stats.invalid
    )?;
    Ok((stats, records))
}
