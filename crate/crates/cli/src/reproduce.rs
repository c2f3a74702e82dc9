//! End-to-end check of the two worked examples against a data file.

use anyhow::{Context, Result};
use bsd_core::record::{analyze, AnalysisRecord, SurfaceSpec};
use bsd_core::Rat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub const EXPECTED: &str = include_str!("../data/expected.toml");

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct Expected {
    pub example: Vec<ExpectedExample>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ExpectedExample {
    pub name: String,
    pub verdict: String,
    pub brauer: String,
    pub field_degree: usize,
    pub adelic_holds: bool,
    pub nonzero_primes: Vec<u64>,
    pub total_nonzero: bool,
}

pub fn parse_expected(text: &str) -> Result<Expected> {
    toml::from_str(text).context("parsing expected values")
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
}

fn third(n: i64) -> Rat {
    Rat::new(n.into(), 3.into())
}

/// Compares one record with its expectations.
pub fn compare(exp: &ExpectedExample, rec: &AnalysisRecord) -> Row {
    let mut mismatches = Vec::new();
    let mut check = |field: &str, expected: String, actual: String| {
        if expected != actual {
            mismatches.push(Mismatch {
                field: field.into(),
                expected,
                actual,
            });
        }
    };
    check("verdict", exp.verdict.clone(), rec.verdict.label().into());
    check(
        "brauer",
        exp.brauer.clone(),
        rec.brauer.clone().unwrap_or_else(|| "-".into()),
    );
    check(
        "field_degree",
        exp.field_degree.to_string(),
        rec.field_degree.map_or("-".into(), |d| d.to_string()),
    );
    check(
        "adelic_holds",
        exp.adelic_holds.to_string(),
        rec.adelic.is_some_and(|a| a.holds()).to_string(),
    );
    let nonzero: Vec<_> = rec
        .contributions
        .iter()
        .filter(|c| !c.value.is_zero())
        .collect();
    let primes: Vec<u64> = nonzero.iter().filter_map(|c| c.p).collect();
    check(
        "nonzero_primes",
        format!("{:?}", exp.nonzero_primes),
        format!("{:?}", primes),
    );
    let thirds = [third(1), third(2)];
    check(
        "nonzero_values",
        "in {1/3, 2/3}".into(),
        if nonzero.iter().all(|c| thirds.contains(&c.value)) {
            "in {1/3, 2/3}".into()
        } else {
            "outside {1/3, 2/3}".into()
        },
    );
    let total_nonzero = rec.total.as_ref().is_some_and(|t| thirds.contains(t));
    check(
        "total_nonzero",
        exp.total_nonzero.to_string(),
        total_nonzero.to_string(),
    );
    Row {
        name: exp.name.clone(),
        pass: mismatches.is_empty(),
        mismatches,
    }
}

pub fn reproduce(expected: &Expected) -> Result<Vec<Row>> {
    expected
        .example
        .iter()
        .map(|exp| {
            let spec = SurfaceSpec::example(&exp.name)
                .with_context(|| format!("unknown example `{}`", exp.name))?;
            let rec = analyze(&spec)?;
            Ok(compare(exp, &rec))
        })
        .collect()
}

pub fn table(rows: &[Row]) -> String {
    let mut out = format!("{:<6} {:<6} {}\n", "name", "status", "divergent fields");
    for r in rows {
        let detail = if r.mismatches.is_empty() {
            "-".to_string()
        } else {
            r.mismatches
                .iter()
                .map(|m| format!("{} (expected {}, got {})", m.field, m.expected, m.actual))
                .collect::<Vec<_>>()
                .join("; ")
        };
        out.push_str(&format!(
            "{:<6} {:<6} {}\n",
            r.name,
            if r.pass { "PASS" } else { "FAIL" },
            detail
        ));
    }
    out
}
