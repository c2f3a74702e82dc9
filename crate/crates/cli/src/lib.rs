//! Command-line driver for the cubic surface toolkit.

pub mod cache;
pub mod reproduce;
pub mod search;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bsd_core::local::VerdictKind;
use bsd_core::record::{analyze_labelled, AnalysisRecord, NormalFormLabel, SurfaceSpec};
use bsd_core::surface::lines::all_lines;
use bsd_core::surface::modp::lines_mod_p;
use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use crate::search::{parse_range, run_search, SearchOptions, SearchRanges};

#[derive(Debug, Parser)]
#[command(
    name = "bsdcubic",
    version,
    about = "Brauer-Manin analysis of diagonal-type cubic surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline on one surface.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        /// Print the record as JSON.
        #[arg(long)]
        json: bool,
        /// Print a human-readable summary instead of the record line.
        #[arg(long, conflicts_with = "json")]
        summary: bool,
    },
    /// Compute the 27 lines, or count lines over F_p.
    Lines {
        #[command(flatten)]
        spec: SpecArgs,
        /// Count F_p-rational lines of the reduction.
        #[arg(long = "mod-p", value_name = "P")]
        mod_p: Option<u64>,
    },
    /// Analyze every surface in a parameter box.
    Search(SearchArgs),
    /// Check the two worked examples against the expected values.
    Reproduce {
        /// Override the bundled expectations file.
        #[arg(long)]
        expected: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// A bundled example.
    #[arg(long, value_parser = ["bsd1", "bsd2"], conflicts_with_all = ["spec", "f"])]
    pub example: Option<String>,
    /// A specification file of `key = value` lines.
    #[arg(long, conflicts_with = "f")]
    pub spec: Option<PathBuf>,
    /// Cubic coefficients `a2,a1,a0` of `x^3 + a2 x^2 + a1 x + a0`.
    #[arg(long, allow_hyphen_values = true, requires_all = ["theta", "d"])]
    pub f: Option<String>,
    /// Trace and norm of θ, as `trace,norm`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Coefficients of ψ in the basis 1, φ, φ^2.
    #[arg(long, allow_hyphen_values = true)]
    pub psi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Use the other root of the θ polynomial.
    #[arg(long)]
    pub swap_theta: bool,
}

impl SpecArgs {
    pub fn label(&self) -> NormalFormLabel {
        if self.swap_theta {
            NormalFormLabel::Conjugate
        } else {
            NormalFormLabel::Standard
        }
    }

    pub fn resolve(&self) -> Result<SurfaceSpec> {
        if let Some(name) = &self.example {
            return SurfaceSpec::example(name)
                .with_context(|| format!("unknown example `{}`", name));
        }
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return Ok(SurfaceSpec::parse_document(&text)?);
        }
        let (Some(f), Some(theta), Some(d)) = (&self.f, &self.theta, &self.d) else {
            bail!("give --example, --spec, or all of --f, --theta and --d");
        };
        let mut doc = String::new();
        let fs: Vec<&str> = f.split(',').collect();
        if fs.len() != 3 {
            bail!("invalid field `f`: expected a2,a1,a0");
        }
        let ts: Vec<&str> = theta.split(',').collect();
        if ts.len() != 2 {
            bail!("invalid field `theta`: expected trace,norm");
        }
        for (k, v) in [
            ("f.a2", fs[0]),
            ("f.a1", fs[1]),
            ("f.a0", fs[2]),
            ("theta.trace", ts[0]),
            ("theta.norm", ts[1]),
            ("d", d.as_str()),
        ] {
            doc.push_str(&format!("{} = {}\n", k, v));
        }
        if let Some(psi) = &self.psi {
            doc.push_str(&format!("psi = {}\n", psi));
        }
        Ok(SurfaceSpec::parse_document(&doc)?)
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a2: String,
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    pub a1: String,
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    pub a0: String,
    #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
    pub trace: String,
    #[arg(long, default_value = "1..10", allow_hyphen_values = true)]
    pub norm: String,
    #[arg(long, default_value = "1..10", allow_hyphen_values = true)]
    pub d: String,
    /// Append-only cache; cached surfaces are skipped.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Only print records with this verdict.
    #[arg(long, value_parser = ["has-obstruction", "hasse-principle-holds", "inconclusive"])]
    pub verdict: Option<String>,
    #[arg(long)]
    pub swap_theta: bool,
}

/// Process exit code for a finished analysis.
pub fn exit_code(verdict: VerdictKind) -> i32 {
    match verdict {
        VerdictKind::HasObstruction | VerdictKind::HassePrincipleHolds => 0,
        VerdictKind::Inconclusive => 2,
    }
}

pub fn record_json(rec: &AnalysisRecord) -> Value {
    let mut map = Map::new();
    for (k, v) in rec.fields(true) {
        map.insert(k.to_string(), Value::String(v));
    }
    Value::Object(map)
}

fn run_inner(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Analyze {
            spec,
            json,
            summary,
        } => {
            let s = spec.resolve()?;
            let rec = analyze_labelled(&s, spec.label())?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&record_json(&rec))?)?;
            } else if summary {
                writeln!(out, "{}", rec.summary())?;
            } else {
                writeln!(out, "{}", rec.to_line())?;
            }
            Ok(exit_code(rec.verdict))
        }
        Command::Lines { spec, mod_p } => {
            let mut s = spec.resolve()?.normal_form()?;
            if spec.swap_theta {
                s = s.swap_theta();
            }
            if let Some(p) = mod_p {
                let m = lines_mod_p(&s, p)?;
                writeln!(out, "p                {}", m.p)?;
                writeln!(out, "enumerated       {}", m.enumerated)?;
                writeln!(out, "frobenius-fixed  {}", m.predicted)?;
                writeln!(out, "orbit sizes      {:?}", m.orbit_sizes)?;
                writeln!(out, "field degree     {}", m.field_degree)?;
                return Ok(if m.enumerated == m.predicted { 0 } else { 1 });
            }
            let rep = all_lines(&s)?;
            writeln!(out, "[L':Q] = {}", rep.degree)?;
            for (line, sum) in rep.lines.iter().zip(rep.row_sums()) {
                writeln!(out, "{:<22} meets {}", line.name.to_string(), sum)?;
            }
            for (n, nine) in rep.triple_nine.iter().enumerate() {
                writeln!(out, "nine {}", n + 1)?;
                for row in nine {
                    let names: Vec<String> =
                        row.iter().map(|&i| rep.lines[i].name.to_string()).collect();
                    writeln!(out, "  {}", names.join("  "))?;
                }
            }
            writeln!(out, "on surface       {}", rep.all_on_surface)?;
            writeln!(out, "distinct         {}", rep.distinct)?;
            writeln!(out, "schlafli         {}", rep.schlafli_holds())?;
            writeln!(out, "triple nine      {}", rep.triple_nine_holds())?;
            let ok = rep.all_on_surface
                && rep.distinct
                && rep.schlafli_holds()
                && rep.triple_nine_holds();
            Ok(if ok { 0 } else { 1 })
        }
        Command::Search(a) => {
            let ranges = SearchRanges {
                a2: parse_range(&a.a2)?,
                a1: parse_range(&a.a1)?,
                a0: parse_range(&a.a0)?,
                trace: parse_range(&a.trace)?,
                norm: parse_range(&a.norm)?,
                d: parse_range(&a.d)?,
            };
            let opts = SearchOptions {
                ranges,
                cache: a.cache,
                jobs: a.jobs,
                label: if a.swap_theta {
                    NormalFormLabel::Conjugate
                } else {
                    NormalFormLabel::Standard
                },
                verdict: a.verdict.as_deref().and_then(VerdictKind::parse),
            };
            let (stats, _) = run_search(&opts, out, err)?;
            Ok(if stats.io_errors > 0 { 1 } else { 0 })
        }
        Command::Reproduce { expected, json } => {
            let text = match expected {
                Some(p) => std::fs::read_to_string(&p)
                    .with_context(|| format!("reading {}", p.display()))?,
                None => reproduce::EXPECTED.to_string(),
            };
            let rows = reproduce::reproduce(&reproduce::parse_expected(&text)?)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                write!(out, "{}", reproduce::table(&rows))?;
            }
            Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 })
        }
    }
}

/// Runs a parsed command; errors are reported on `err` with exit code 1.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {:#}", e);
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let table = [
            (VerdictKind::HasObstruction, 0),
            (VerdictKind::HassePrincipleHolds, 0),
            (VerdictKind::Inconclusive, 2),
        ];
        for (v, code) in table {
            assert_eq!(exit_code(v), code, "{:?}", v);
        }
    }

    #[test]
    fn inline_spec_matches_example() {
        let cli = Cli::parse_from([
            "bsdcubic", "analyze", "--f", "0,-1,-1", "--theta", "-13,48", "--d", "32",
        ]);
        let Command::Analyze { spec, .. } = cli.command else {
            panic!()
        };
        assert_eq!(spec.resolve().unwrap(), SurfaceSpec::example1());
    }
}
