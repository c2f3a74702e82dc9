use std::fs;
use std::process::{Command, Output};

use bsd_cli::cache::parse_cache_line;
use bsd_core::record::{AnalysisRecord, SurfaceSpec};

fn bsdcubic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsdcubic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn obstruction_exits_zero() {
    let o = bsdcubic(&["analyze", "--example", "bsd2", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "has-obstruction");
    assert_eq!(v["total"], "2/3");
}

#[test]
fn hasse_principle_exits_zero() {
    let o = bsdcubic(&["analyze", "--f", "0,-1,-1", "--theta", "-5,12", "--d", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=hasse-principle-holds"));
}

#[test]
fn inconclusive_exits_two() {
    let o = bsdcubic(&["analyze", "--f", "0,-1,-1", "--theta", "-5,12", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict=inconclusive"));
}

#[test]
fn malformed_spec_exits_one_and_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.spec");
    fs::write(
        &path,
        "f.a2 = 0\nf.a1 = -1\nf.a0 = -1\ntheta.trace = 13/0x\ntheta.norm = 48\nd = 32\n",
    )
    .unwrap();
    let o = bsdcubic(&["analyze", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("theta.trace"), "{}", stderr(&o));

    fs::write(
        &path,
        "f.a2 = 0\nf.a1 = -1\nf.a0 = -1\ntheta.trace = -3\ntheta.norm = 5\nd = 32\n",
    )
    .unwrap();
    let o = bsdcubic(&["analyze", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("theta"), "{}", stderr(&o));
}

#[test]
fn spec_file_matches_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bsd1.spec");
    fs::write(
        &path,
        format!("# first example\n{}", SurfaceSpec::example1().to_document()),
    )
    .unwrap();
    let a = bsdcubic(&["analyze", "--spec", path.to_str().unwrap()]);
    let b = bsdcubic(&["analyze", "--example", "bsd1"]);
    let strip = |o: &Output| {
        AnalysisRecord::parse_line(stdout(o).trim_end())
            .unwrap()
            .canonical_line()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn record_line_round_trips() {
    let o = bsdcubic(&["analyze", "--example", "bsd1"]);
    let line = stdout(&o);
    let rec = AnalysisRecord::parse_line(line.trim_end()).unwrap();
    assert_eq!(rec.to_line(), line.trim_end());
    assert!(rec.elapsed_ms.is_some());
}

const BOX: [&str; 12] = [
    "--a1", "-1", "--a0", "-1", "--trace", "-3..3", "--norm", "6..8", "--d", "1..3", "--jobs", "2",
];

#[test]
fn search_rerun_leaves_cache_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.txt");
    let mut args = vec!["search"];
    args.extend(BOX);
    args.extend(["--cache", cache.to_str().unwrap()]);

    let first = bsdcubic(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let after_first = fs::read(&cache).unwrap();
    let lines: Vec<_> = std::str::from_utf8(&after_first).unwrap().lines().collect();
    // (trace, norm) in {(±1, 6), (±3, 8)} times three values of d
    assert_eq!(lines.len(), 12);
    assert_eq!(stdout(&first).lines().count(), 12);
    for l in &lines {
        let (key, rec) = parse_cache_line(l).expect("well-formed cache line");
        assert_eq!(key.len(), 64);
        assert!(rec.elapsed_ms.is_none());
    }

    let second = bsdcubic(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(fs::read(&cache).unwrap(), after_first);
    assert!(stdout(&second).is_empty());
    assert!(stderr(&second).contains("analyzed 0, cached 12"));
}

#[test]
fn search_output_is_independent_of_jobs() {
    let mut one = vec!["search"];
    one.extend(BOX);
    let mut many = one.clone();
    *one.last_mut().unwrap() = "1";
    *many.last_mut().unwrap() = "3";
    assert_eq!(stdout(&bsdcubic(&one)), stdout(&bsdcubic(&many)));
}

#[test]
fn empty_range_is_not_an_error() {
    let o = bsdcubic(&["search", "--d", "5..4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("enumerated 0"));
}

#[test]
fn verdict_filter() {
    let mut args = vec!["search"];
    args.extend(BOX);
    args.extend(["--verdict", "has-obstruction"]);
    let out = stdout(&bsdcubic(&args));
    assert!(out.lines().all(|l| l.contains("verdict=has-obstruction")));
}

#[test]
fn reproduce_reports_divergent_field() {
    let o = bsdcubic(&["reproduce", "--json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let fields: Vec<&str> = row["mismatches"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m["field"].as_str().unwrap())
            .collect();
        // only the degree of the field of definition diverges (36 against 18)
        assert_eq!(fields, ["field_degree"], "{}", row);
    }
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_with_matching_expectations_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.toml");
    let text = bsd_cli::reproduce::EXPECTED.replace("field_degree = 18", "field_degree = 36");
    fs::write(&path, text).unwrap();
    let o = bsdcubic(&["reproduce", "--expected", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn mod_p_counts_agree() {
    for (ex, p) in [("bsd1", "5"), ("bsd2", "11")] {
        let o = bsdcubic(&["lines", "--example", ex, "--mod-p", p]);
        assert_eq!(o.status.code(), Some(0), "{} {}: {}", ex, p, stderr(&o));
    }
    let o = bsdcubic(&["lines", "--example", "bsd2", "--mod-p", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad reduction at 7"));
}
