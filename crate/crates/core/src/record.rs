//! Surface specifications and analysis records in a line-oriented text
//! format with a fixed field order.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::arith::{format_rat, parse_rat};
use crate::error::{Error, Result};
use crate::factor::is_irreducible_q;
use crate::local::{
    verdict_for_class, ConditionStatus, InvariantContribution, Place, Rationale, Verdict,
    VerdictKind,
};
use crate::poly::UniPoly;
use crate::surface::lines::{classify_degree, resolvent};
use crate::surface::NormalForm;
use crate::tower::build_tower;
use crate::{QPoly, Rat, QQ};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `x^3 + a2 x^2 + a1 x + a0`, `θ` a root of `T^2 - trace T + norm`,
/// `ψ = psi[0] + psi[1] φ + psi[2] φ^2`, and the coefficient `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    pub a2: Rat,
    pub a1: Rat,
    pub a0: Rat,
    pub theta_trace: Rat,
    pub theta_norm: Rat,
    pub psi: [Rat; 3],
    pub d: Rat,
}

fn parse_error(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

impl SurfaceSpec {
    pub fn new(f: [i64; 3], theta: [i64; 2], d: i64) -> Self {
        SurfaceSpec {
            a2: r(f[0]),
            a1: r(f[1]),
            a0: r(f[2]),
            theta_trace: r(theta[0]),
            theta_norm: r(theta[1]),
            psi: [Rat::zero(), Rat::zero(), Rat::one()],
            d: r(d),
        }
    }

    /// `φ^3 = φ + 1`, `θ^2 + 13θ + 48 = 0`, `d = 32`.
    pub fn example1() -> Self {
        SurfaceSpec::new([0, -1, -1], [-13, 48], 32)
    }

    /// `φ^3 + φ + 1 = 0`, `θ^2 - 4θ + 35 = 0`, `d = 175`.
    pub fn example2() -> Self {
        SurfaceSpec::new([0, 1, 1], [4, 35], 175)
    }

    pub fn example(name: &str) -> Option<Self> {
        match name {
            "bsd1" => Some(Self::example1()),
            "bsd2" => Some(Self::example2()),
            _ => None,
        }
    }

    pub fn cubic(&self) -> QPoly {
        UniPoly::new(
            QQ,
            vec![
                self.a0.clone(),
                self.a1.clone(),
                self.a2.clone(),
                Rat::one(),
            ],
        )
    }

    pub fn theta_poly(&self) -> QPoly {
        UniPoly::new(
            QQ,
            vec![
                self.theta_norm.clone(),
                -self.theta_trace.clone(),
                Rat::one(),
            ],
        )
    }

    pub fn psi_rule(&self) -> QPoly {
        UniPoly::new(QQ, self.psi.to_vec())
    }

    /// Builds the tower and the surface, naming the field at fault.
    pub fn normal_form(&self) -> Result<NormalForm> {
        let f = self.cubic();
        match is_irreducible_q(&f) {
            Ok(true) => {}
            Ok(false) => {
                return Err(parse_error(
                    "f",
                    format!("{} fails the irreducibility check", f),
                ))
            }
            Err(e) => return Err(parse_error("f", e.to_string())),
        }
        let tp = self.theta_poly();
        match is_irreducible_q(&tp) {
            Ok(true) => {}
            Ok(false) => {
                return Err(parse_error(
                    "theta",
                    format!("{} fails the irreducibility check", tp),
                ))
            }
            Err(e) => return Err(parse_error("theta", e.to_string())),
        }
        if self.d.is_zero() {
            return Err(parse_error("d", "must be nonzero"));
        }
        let rule = self.psi_rule();
        let t = build_tower(&f, &tp, &rule).map_err(|e| {
            let msg = e.to_string();
            let field = if msg.contains("theta") {
                "theta"
            } else if msg.contains("psi") || msg.contains("dependent") {
                "psi"
            } else {
                "f"
            };
            parse_error(field, msg)
        })?;
        NormalForm::new(t, self.d.clone()).map_err(|e| parse_error("d", e.to_string()))
    }

    /// Fixed-order `key=value` fields.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("f.a2", format_rat(&self.a2)),
            ("f.a1", format_rat(&self.a1)),
            ("f.a0", format_rat(&self.a0)),
            ("theta.trace", format_rat(&self.theta_trace)),
            ("theta.norm", format_rat(&self.theta_norm)),
            (
                "psi",
                self.psi
                    .iter()
                    .map(format_rat)
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("d", format_rat(&self.d)),
        ]
    }

    /// One line; equal specs give equal text.
    pub fn canonical(&self) -> String {
        join_fields(&self.fields())
    }

    /// The multi-line input format: `key = value`, `#` comments, `psi`
    /// optional.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(out, "{} = {}", k, v);
        }
        out
    }

    pub fn parse_document(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_error(line, "expected `key = value`"))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Self::from_pairs(&pairs)
    }

    fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
        };
        let known = [
            "f.a2",
            "f.a1",
            "f.a0",
            "theta.trace",
            "theta.norm",
            "psi",
            "d",
        ];
        if let Some((k, _)) = pairs.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            return Err(parse_error(k, "unknown field"));
        }
        let rat_field = |key: &str| -> Result<Rat> {
            let v = get(key).ok_or_else(|| parse_error(key, "missing"))?;
            parse_rat(v).ok_or_else(|| parse_error(key, format!("`{}` is not a rational", v)))
        };
        let psi = match get("psi") {
            None => [Rat::zero(), Rat::zero(), Rat::one()],
            Some(v) => {
                let parts: Vec<Rat> = v
                    .split(',')
                    .map(|c| {
                        parse_rat(c)
                            .ok_or_else(|| parse_error("psi", format!("`{}` is not a rational", c)))
                    })
                    .collect::<Result<_>>()?;
                <[Rat; 3]>::try_from(parts)
                    .map_err(|_| parse_error("psi", "expected three coefficients"))?
            }
        };
        Ok(SurfaceSpec {
            a2: rat_field("f.a2")?,
            a1: rat_field("f.a1")?,
            a0: rat_field("f.a0")?,
            theta_trace: rat_field("theta.trace")?,
            theta_norm: rat_field("theta.norm")?,
            psi,
            d: rat_field("d")?,
        })
    }
}

/// Which root of the θ polynomial plays the role of `θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormLabel {
    Standard,
    Conjugate,
}

fn join_fields(fields: &[(&str, String)]) -> String {
    fields
        .iter()
        .map(|(k, v)| format!("{}={}", k, v))
        .collect::<Vec<_>>()
        .join("\t")
}

fn split_fields(line: &str) -> Result<Vec<(String, String)>> {
    line.trim_end_matches(['\n', '\r'])
        .split('\t')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| parse_error(kv, "expected key=value"))
        })
        .collect()
}

/// Result of the whole pipeline on one surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRecord {
    pub spec: SurfaceSpec,
    pub label: NormalFormLabel,
    /// `[L':Q]`, absent when the resolvent could not be computed.
    pub field_degree: Option<usize>,
    pub brauer: Option<String>,
    pub adelic: Option<ConditionStatus>,
    /// Statuses of the four conditions.
    pub conditions: Vec<ConditionStatus>,
    pub missing_places: Vec<Place>,
    pub contributions: Vec<InvariantContribution>,
    pub total: Option<Rat>,
    pub verdict: VerdictKind,
    pub reason: String,
    pub elapsed_ms: Option<u64>,
    pub version: String,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map(|x| x.to_string())
        .unwrap_or_else(|| "-".into())
}

fn contribution_text(c: &InvariantContribution) -> String {
    format!(
        "{}|{}|{}|{}",
        c.place,
        opt(&c.p),
        format_rat(&c.value),
        c.rationale.label()
    )
}

fn parse_contribution(s: &str) -> Result<InvariantContribution> {
    let bad = || parse_error("contributions", format!("malformed entry `{}`", s));
    let parts: Vec<&str> = s.split('|').collect();
    let [place, p, value, rationale] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(InvariantContribution {
        place: place.to_string(),
        p: if *p == "-" {
            None
        } else {
            Some(p.parse().map_err(|_| bad())?)
        },
        value: parse_rat(value).ok_or_else(bad)?,
        rationale: Rationale::parse(rationale).ok_or_else(bad)?,
    })
}

fn parse_place(s: &str) -> Option<Place> {
    if s == "inf" {
        Some(Place::Real)
    } else {
        s.parse().ok().map(Place::Finite)
    }
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.iter().map(f).collect::<Vec<_>>().join(";")
    }
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if s == "-" {
        Ok(Vec::new())
    } else {
        s.split(';').map(f).collect()
    }
}

impl AnalysisRecord {
    /// Fixed-order fields; `elapsed_ms` only when `with_timing` is set.
    pub fn fields(&self, with_timing: bool) -> Vec<(&'static str, String)> {
        let mut out = self.spec.fields();
        out.push((
            "label",
            match self.label {
                NormalFormLabel::Standard => "theta",
                NormalFormLabel::Conjugate => "theta-bar",
            }
            .into(),
        ));
        out.push(("field_degree", opt(&self.field_degree)));
        out.push(("brauer", opt(&self.brauer)));
        out.push(("adelic", opt(&self.adelic.map(|s| s.label()))));
        out.push(("conditions", list(&self.conditions, |c| c.label().into())));
        out.push((
            "missing_places",
            list(&self.missing_places, |p| p.to_string()),
        ));
        out.push((
            "contributions",
            list(&self.contributions, contribution_text),
        ));
        out.push(("total", opt(&self.total.as_ref().map(format_rat))));
        out.push(("verdict", self.verdict.label().into()));
        out.push((
            "reason",
            if self.reason.is_empty() {
                "-".into()
            } else {
                self.reason.replace(['\t', '\n'], " ")
            },
        ));
        if with_timing {
            out.push(("elapsed_ms", opt(&self.elapsed_ms)));
        }
        out.push(("version", self.version.clone()));
        out
    }

    /// Full record on one line.
    pub fn to_line(&self) -> String {
        join_fields(&self.fields(true))
    }

    /// The record without timing, as stored in caches.
    pub fn canonical_line(&self) -> String {
        join_fields(&self.fields(false))
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let pairs = split_fields(line)?;
        let get = |key: &str| -> Result<&str> {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| parse_error(key, "missing"))
        };
        let spec_keys = [
            "f.a2",
            "f.a1",
            "f.a0",
            "theta.trace",
            "theta.norm",
            "psi",
            "d",
        ];
        let spec_pairs: Vec<(String, String)> = pairs
            .iter()
            .filter(|(k, _)| spec_keys.contains(&k.as_str()))
            .cloned()
            .collect();
        let spec = SurfaceSpec::from_pairs(&spec_pairs)?;
        let label = match get("label")? {
            "theta" => NormalFormLabel::Standard,
            "theta-bar" => NormalFormLabel::Conjugate,
            other => return Err(parse_error("label", format!("unknown label `{}`", other))),
        };
        let dash = |s: &str| s != "-";
        let field_degree = match get("field_degree")? {
            "-" => None,
            v => Some(
                v.parse()
                    .map_err(|_| parse_error("field_degree", "not an integer"))?,
            ),
        };
        let brauer = Some(get("brauer")?).filter(|s| dash(s)).map(String::from);
        let adelic = match get("adelic")? {
            "-" => None,
            v => Some(ConditionStatus::parse(v).ok_or_else(|| parse_error("adelic", v))?),
        };
        let conditions = parse_list(get("conditions")?, |c| {
            ConditionStatus::parse(c).ok_or_else(|| parse_error("conditions", c))
        })?;
        let missing_places = parse_list(get("missing_places")?, |p| {
            parse_place(p).ok_or_else(|| parse_error("missing_places", p))
        })?;
        let contributions = parse_list(get("contributions")?, parse_contribution)?;
        let total = match get("total")? {
            "-" => None,
            v => Some(parse_rat(v).ok_or_else(|| parse_error("total", v))?),
        };
        let verdict =
            VerdictKind::parse(get("verdict")?).ok_or_else(|| parse_error("verdict", "unknown"))?;
        let reason = match get("reason")? {
            "-" => String::new(),
            v => v.to_string(),
        };
        let elapsed_ms = match pairs.iter().find(|(k, _)| k == "elapsed_ms") {
            None => None,
            Some((_, v)) if v == "-" => None,
            Some((_, v)) => Some(
                v.parse()
                    .map_err(|_| parse_error("elapsed_ms", v.as_str()))?,
            ),
        };
        Ok(AnalysisRecord {
            spec,
            label,
            field_degree,
            brauer,
            adelic,
            conditions,
            missing_places,
            contributions,
            total,
            verdict,
            reason,
            elapsed_ms,
            version: get("version")?.to_string(),
        })
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "surface     {}",
            self.spec.canonical().replace('\t', " ")
        );
        let _ = writeln!(out, "[L':Q]      {}", opt(&self.field_degree));
        let _ = writeln!(out, "Brauer      {}", opt(&self.brauer));
        let _ = writeln!(out, "adelic      {}", opt(&self.adelic.map(|s| s.label())));
        for c in &self.contributions {
            let _ = writeln!(
                out,
                "inv {:<22} {:>5} {}",
                c.place,
                format_rat(&c.value),
                c.rationale.label()
            );
        }
        let _ = writeln!(
            out,
            "total       {}",
            opt(&self.total.as_ref().map(format_rat))
        );
        let _ = write!(out, "verdict     {}", self.verdict.label());
        if !self.reason.is_empty() {
            let _ = write!(out, " ({})", self.reason);
        }
        out
    }

    fn from_verdict(
        spec: &SurfaceSpec,
        label: NormalFormLabel,
        field_degree: Option<usize>,
        v: Verdict,
    ) -> Self {
        let adelic = v.adelic.as_ref();
        AnalysisRecord {
            spec: spec.clone(),
            label,
            field_degree,
            brauer: v.brauer.as_ref().map(|b| b.label().to_string()),
            adelic: adelic.map(|a| a.status()),
            conditions: adelic
                .map(|a| a.conditions().iter().map(|c| c.status).collect())
                .unwrap_or_default(),
            missing_places: adelic.map(|a| a.missing_places()).unwrap_or_default(),
            contributions: v
                .invariants
                .as_ref()
                .map(|i| i.contributions.clone())
                .unwrap_or_default(),
            total: v.invariants.as_ref().map(|i| i.total.clone()),
            verdict: v.kind,
            reason: v.reason.unwrap_or_default(),
            elapsed_ms: None,
            version: VERSION.to_string(),
        }
    }
}

/// Runs the pipeline. Invalid specifications are errors; everything that
/// fails later is reported as an inconclusive record.
pub fn analyze(spec: &SurfaceSpec) -> Result<AnalysisRecord> {
    analyze_labelled(spec, NormalFormLabel::Standard)
}

pub fn analyze_labelled(spec: &SurfaceSpec, label: NormalFormLabel) -> Result<AnalysisRecord> {
    let start = Instant::now();
    let mut s = spec.normal_form()?;
    if label == NormalFormLabel::Conjugate {
        s = s.swap_theta();
    }
    let res = resolvent(&s);
    let degree = res.as_ref().ok().map(|r| r.field_degree());
    let class = res.map(|r| classify_degree(r.field_degree()));
    let v = verdict_for_class(&s, class);
    let mut rec = AnalysisRecord::from_verdict(spec, label, degree, v);
    rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn document_round_trip() {
        let s = SurfaceSpec::example2();
        let text = s.to_document();
        assert_eq!(SurfaceSpec::parse_document(&text).unwrap(), s);
        let short = "f.a2 = 0\nf.a1 = -1\nf.a0 = -1 # comment\ntheta.trace = -13\ntheta.norm = 48\nd = 32\n";
        assert_eq!(
            SurfaceSpec::parse_document(short).unwrap(),
            SurfaceSpec::example1()
        );
    }

    #[test]
    fn parse_errors_name_the_field() {
        let text = SurfaceSpec::example1()
            .to_document()
            .replace("d = 32/1", "d = x");
        match SurfaceSpec::parse_document(&text) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "d"),
            other => panic!("{:?}", other),
        }
        let reducible = SurfaceSpec::new([0, -1, 0], [-13, 48], 32);
        match reducible.normal_form() {
            Err(Error::Parse { field, message }) => {
                assert_eq!(field, "f");
                assert!(message.contains("irreducibility"));
            }
            other => panic!("{:?}", other.map(|_| ())),
        }
        let wrong_class = SurfaceSpec::new([0, -1, -1], [0, 1], 32);
        match wrong_class.normal_form() {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "theta"),
            other => panic!("{:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn record_round_trip() {
        let rec = analyze(&SurfaceSpec::example2()).unwrap();
        assert_eq!(rec.verdict, VerdictKind::HasObstruction);
        assert_eq!(rec.total, Some(rat(2, 3)));
        let back = AnalysisRecord::parse_line(&rec.to_line()).unwrap();
        assert_eq!(back, rec);
        let canon = AnalysisRecord::parse_line(&rec.canonical_line()).unwrap();
        assert_eq!(canon.elapsed_ms, None);
        assert!(!rec.canonical_line().contains("elapsed_ms"));
    }
}
