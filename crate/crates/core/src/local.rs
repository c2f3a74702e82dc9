//! Local solubility, local invariants of the order-three class, and the
//! verdict.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::factor::reduce_mod_p;
use crate::form::Form;
use crate::ideal::{ideal_valuation, rational_valuation, PrimeIdeal};
use crate::poly::UniPoly;
use crate::ring::{Field, PrimeField, Ring};
use crate::surface::{brauer_classify, denominator, BrauerClass, NormalForm};
use crate::tower::{PrimeBehaviour, Unramified};
use crate::{Int, Rat, ZPoly, ZZ};

/// Largest `p^r` used by the p-adic searches.
pub const PRECISION_CAP: u64 = 1_000_000;
/// Evaluations allowed when looking for a smooth point modulo `p`.
const RESIDUE_BUDGET: u64 = 1_000_000;
/// Nodes allowed in one p-adic root search.
const NODE_BUDGET: usize = 20_000;
/// Primes always scanned for local points.
pub const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Satisfied,
    /// The valuation test failed but a certified local point was found at
    /// every prime concerned.
    SatisfiedByLocalPoint,
    Failed,
    Unknown,
}

impl ConditionStatus {
    pub fn holds(self) -> bool {
        matches!(self, Self::Satisfied | Self::SatisfiedByLocalPoint)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Satisfied => "satisfied",
            Self::SatisfiedByLocalPoint => "satisfied-by-local-point",
            Self::Failed => "failed",
            Self::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Self::Satisfied,
            Self::SatisfiedByLocalPoint,
            Self::Failed,
            Self::Unknown,
        ]
        .into_iter()
        .find(|c| c.label() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub status: ConditionStatus,
    pub detail: String,
}

impl Condition {
    fn new(status: ConditionStatus, detail: impl Into<String>) -> Self {
        Condition {
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Real,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p),
            Place::Real => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointMethod {
    /// Smooth point on the plane section `x = 0` modulo a prime of good
    /// reduction, lifted by Hensel's lemma.
    GoodReductionFiber,
    /// The same section at `p = 3`, where the map to `[z : w]` is used.
    ThreeAdicFiber,
    /// The point `[d x0 : -1 : d : d]` at a prime dividing `d`.
    BadPrimeLift,
    /// Search through residues and p-adic lines.
    Exhaustive,
    /// A real zero of an odd-degree form.
    OddDegree,
}

impl PointMethod {
    pub fn label(self) -> &'static str {
        match self {
            Self::GoodReductionFiber => "good-reduction-fiber",
            Self::ThreeAdicFiber => "three-adic-fiber",
            Self::BadPrimeLift => "bad-prime-lift",
            Self::Exhaustive => "exhaustive",
            Self::OddDegree => "odd-degree",
        }
    }
}

/// A point `base + u·direction` with `v_p(g(u)) > 2 v_p(g'(u))` for
/// `g(t) = F(base + t·direction)`, so that Hensel's lemma yields a root of
/// `g` in `Z_p` and hence a `Q_p`-point on the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: u64,
    pub base: [Int; 4],
    pub direction: [Int; 4],
    pub u: Int,
}

impl Witness {
    pub fn point(&self) -> [Int; 4] {
        std::array::from_fn(|i| &self.base[i] + &self.u * &self.direction[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalPoint {
    Exists {
        method: PointMethod,
        witness: Option<Witness>,
    },
    NotFound {
        reason: String,
    },
}

impl LocalPoint {
    pub fn exists(&self) -> bool {
        matches!(self, LocalPoint::Exists { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelicReport {
    pub unramified: Condition,
    pub unit_norms: Condition,
    pub separable_mod_3: Condition,
    pub bad_primes: Condition,
    pub places: Vec<(Place, LocalPoint)>,
}

impl AdelicReport {
    pub fn conditions(&self) -> [&Condition; 4] {
        [
            &self.unramified,
            &self.unit_norms,
            &self.separable_mod_3,
            &self.bad_primes,
        ]
    }

    pub fn status(&self) -> ConditionStatus {
        let statuses = self.conditions().map(|c| c.status);
        if statuses.iter().all(|s| *s == ConditionStatus::Satisfied) {
            ConditionStatus::Satisfied
        } else if statuses.iter().all(|s| s.holds()) {
            ConditionStatus::SatisfiedByLocalPoint
        } else if statuses.contains(&ConditionStatus::Failed) {
            ConditionStatus::Failed
        } else {
            ConditionStatus::Unknown
        }
    }

    pub fn points_confirmed(&self) -> bool {
        self.places.iter().all(|(_, pt)| pt.exists())
    }

    pub fn missing_places(&self) -> Vec<Place> {
        self.places
            .iter()
            .filter(|(_, pt)| !pt.exists())
            .map(|(pl, _)| *pl)
            .collect()
    }
}

/// Primitive integral model of the equation.
pub fn integral_form(s: &NormalForm) -> Form<ZZ> {
    let den = Rat::from_integer(denominator(&s.equation));
    let scaled = s.equation.map(ZZ, |c| (c * &den).to_integer());
    let content = scaled.terms().fold(Int::zero(), |acc, (_, c)| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        scaled
    } else {
        scaled.map(ZZ, |c| c / &content)
    }
}

fn rat_primes(q: &Rat) -> Result<Vec<u64>> {
    let mut out = prime_divisors(q.numer())?;
    out.extend(prime_divisors(q.denom())?);
    Ok(out)
}

/// Primes where a local point is checked explicitly: the divisors of
/// `6 d N(θθ̄) disc(f)` together with the primes up to 13. Every other prime
/// has good reduction, where the genus-one section has points by the Hasse
/// bound.
pub fn scanned_primes(s: &NormalForm) -> Result<Vec<u64>> {
    let t = &s.tower;
    let mut ps: Vec<u64> = SMALL_PRIMES.to_vec();
    ps.extend(rat_primes(&s.d)?);
    ps.extend(rat_primes(&t.theta_norm())?);
    ps.extend(rat_primes(&t.disc)?);
    ps.extend(prime_divisors(&denominator(&s.equation))?);
    ps.sort_unstable();
    ps.dedup();
    Ok(ps)
}

/// Primes of `Q` below the places where an invariant can be nonzero.
pub fn relevant_primes(s: &NormalForm) -> Result<Vec<u64>> {
    let t = &s.tower;
    let mut ps = rat_primes(&s.d)?;
    ps.extend(rat_primes(&t.theta_norm())?);
    ps.extend(rat_primes(&t.disc)?);
    ps.extend(rat_primes(&t.theta_poly.discriminant()?)?);
    ps.sort_unstable();
    ps.dedup();
    Ok(ps)
}

fn padic_valuation(n: &Int, p: u64) -> Option<u32> {
    if n.is_zero() {
        None
    } else {
        Some(valuation(n, p))
    }
}

/// Whether `v_p(g(u)) > 2 v_p(g'(u))`, with an exact root always accepted.
fn hensel_certified(g: &ZPoly, dg: &ZPoly, u: &Int, p: u64) -> bool {
    let gu = g.eval(u);
    let Some(vg) = padic_valuation(&gu, p) else {
        return true;
    };
    match padic_valuation(&dg.eval(u), p) {
        Some(vd) => vg > 2 * vd,
        None => false,
    }
}

/// A `u` certifying a root of `g` in `Z_p`, found by extending residues digit
/// by digit while `g(u) ≡ 0 mod p^r`.
fn padic_root(g: &ZPoly, p: u64) -> Option<Int> {
    if g.is_zero() {
        return Some(Int::zero());
    }
    let dg = g.derivative();
    let pi = Int::from(p);
    let mut stack: Vec<(Int, u32, Int)> = vec![(Int::zero(), 0, Int::one())];
    let mut nodes = 0usize;
    while let Some((u, r, pr)) = stack.pop() {
        nodes += 1;
        if nodes > NODE_BUDGET {
            return None;
        }
        if r > 0 && hensel_certified(g, &dg, &u, p) {
            return Some(u);
        }
        let next = &pr * &pi;
        if next > Int::from(PRECISION_CAP) {
            continue;
        }
        for digit in (0..p).rev() {
            let u2 = &u + &pr * Int::from(digit);
            if (g.eval(&u2) % &next).is_zero() {
                stack.push((u2, r + 1, next.clone()));
            }
        }
    }
    None
}

fn slice_poly(f: &Form<ZZ>, base: &[Int; 4], direction: &[Int; 4]) -> ZPoly {
    UniPoly::new(ZZ, f.binary_coeffs(base, direction))
}

fn try_slice(f: &Form<ZZ>, p: u64, base: [Int; 4], direction: [Int; 4]) -> Option<Witness> {
    let g = slice_poly(f, &base, &direction);
    let u = padic_root(&g, p)?;
    let w = Witness {
        p,
        base,
        direction,
        u,
    };
    if w.point().iter().all(|c| c.is_zero()) {
        return None;
    }
    Some(w)
}

/// Re-checks a witness against the integral model.
pub fn verify_witness(s: &NormalForm, w: &Witness) -> bool {
    let f = integral_form(s);
    if w.point().iter().all(|c| c.is_zero()) {
        return false;
    }
    let g = slice_poly(&f, &w.base, &w.direction);
    if g.is_zero() {
        return true;
    }
    hensel_certified(&g, &g.derivative(), &w.u, w.p)
}

fn lift_vec(v: &[u64; 4]) -> [Int; 4] {
    v.map(Int::from)
}

fn unit_vector(i: usize) -> [Int; 4] {
    std::array::from_fn(|k| if k == i { Int::one() } else { Int::zero() })
}

/// A point of `P^3(F_p)` on the reduction with a nonzero partial derivative,
/// searched on `x = 0` first when `fiber_only` is set.
fn smooth_residue_point(f: &Form<ZZ>, p: u64, fiber_only: bool) -> Option<Witness> {
    let fp = PrimeField::new(p);
    let fbar = f.map(fp, |c| fp.reduce_int(c));
    if fbar.is_zero() {
        return None;
    }
    let partials: Vec<Form<PrimeField>> = (0..4).map(|i| fbar.partial(i)).collect();
    let check = |pt: [u64; 4]| -> Option<Witness> {
        if !fp.is_zero(&fbar.eval(&pt)) {
            return None;
        }
        let i = (0..4).find(|&i| !fp.is_zero(&partials[i].eval(&pt)))?;
        try_slice(f, p, lift_vec(&pt), unit_vector(i))
    };
    let mut budget = RESIDUE_BUDGET;
    let points = crate::surface::modp::projective_points(p).filter(|pt| !fiber_only || pt[0] == 0);
    for pt in points {
        if budget == 0 {
            return None;
        }
        budget -= 1;
        if let Some(w) = check(pt) {
            return Some(w);
        }
    }
    None
}

/// Lines `base + t e_i` through small integer points, used when residues
/// alone do not certify a point.
fn exhaustive_slices(f: &Form<ZZ>, p: u64) -> Option<Witness> {
    let vals = [0i64, 1, -1];
    for i in 0..4 {
        for a in vals {
            for b in vals {
                for c in vals {
                    let mut rest = [a, b, c].into_iter();
                    let base: [Int; 4] = std::array::from_fn(|k| {
                        if k == i {
                            Int::zero()
                        } else {
                            Int::from(rest.next().unwrap())
                        }
                    });
                    if base.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    if let Some(w) = try_slice(f, p, base, unit_vector(i)) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn theta_valuations(s: &NormalForm, prime: &PrimeIdeal) -> Result<(i64, i64)> {
    let t = &s.tower;
    Ok((
        ideal_valuation(&t.theta, prime)?,
        ideal_valuation(&t.theta_bar, prime)?,
    ))
}

/// Whether some degree-one prime `P | p` of `K`, inert in `L`, has
/// `v_P(d) <= v_P(θ)` and `v_P(θ̄) = 0`.
fn bad_prime_construction_applies(s: &NormalForm, p: u64) -> bool {
    let t = &s.tower;
    let Ok(primes) = t.primes_of_k(p) else {
        return false;
    };
    primes.iter().any(|q| {
        if q.f != 1 || t.behaviour_in_l(q).ok() != Some(PrimeBehaviour::Inert) {
            return false;
        }
        match theta_valuations(s, q) {
            Ok((vt, vtb)) => rational_valuation(&s.d, q) <= vt && vtb == 0,
            Err(_) => false,
        }
    })
}

/// Existence of a `Q_p`-point, with a certificate that can be re-checked by
/// [`verify_witness`].
pub fn local_point(s: &NormalForm, p: u64) -> LocalPoint {
    if !is_prime(p) {
        return LocalPoint::NotFound {
            reason: format!("{} is not prime", p),
        };
    }
    let f = integral_form(s);
    let divides_d = s.d.numer().is_multiple_of(&Int::from(p));
    let found = |method, w| LocalPoint::Exists {
        method,
        witness: Some(w),
    };
    if !divides_d {
        let method = if p == 3 {
            PointMethod::ThreeAdicFiber
        } else {
            PointMethod::GoodReductionFiber
        };
        if let Some(w) = smooth_residue_point(&f, p, true) {
            return found(method, w);
        }
    } else if bad_prime_construction_applies(s, p) {
        let d = s.d.numer().clone();
        let base = [Int::zero(), -Int::one(), d.clone(), d.clone()];
        let direction = [d, Int::zero(), Int::zero(), Int::zero()];
        if let Some(w) = try_slice(&f, p, base, direction) {
            return found(PointMethod::BadPrimeLift, w);
        }
    }
    if let Some(w) = smooth_residue_point(&f, p, false) {
        return found(PointMethod::Exhaustive, w);
    }
    if let Some(w) = exhaustive_slices(&f, p) {
        return found(PointMethod::Exhaustive, w);
    }
    LocalPoint::NotFound {
        reason: format!("no certified point with p^r <= {}", PRECISION_CAP),
    }
}

pub fn real_point() -> LocalPoint {
    LocalPoint::Exists {
        method: PointMethod::OddDegree,
        witness: None,
    }
}

/// Local points at the real place and every scanned prime.
pub fn local_points(s: &NormalForm) -> Result<Vec<(Place, LocalPoint)>> {
    let mut out = vec![(Place::Real, real_point())];
    for p in scanned_primes(s)? {
        out.push((Place::Finite(p), local_point(s, p)));
    }
    out.sort_by_key(|(pl, _)| *pl);
    Ok(out)
}

fn unramified_condition(s: &NormalForm) -> Condition {
    match s.tower.is_unramified() {
        Unramified::Yes => Condition::new(
            ConditionStatus::Satisfied,
            format!("disc {} is squarefree", s.tower.disc),
        ),
        Unramified::Unknown => Condition::new(
            ConditionStatus::Unknown,
            format!(
                "disc {} is not squarefree or f is not integral",
                s.tower.disc
            ),
        ),
    }
}

fn unit_norm_condition(s: &NormalForm) -> Condition {
    let t = &s.tower;
    let k0 = &t.k0;
    let phi = k0.generator();
    let rule = t.psi_rule.map(k0.clone(), |c| k0.from_rat(c.clone()));
    let psi = rule.eval(&phi);
    let (nphi, npsi) = (k0.norm(&phi), k0.norm(&psi));
    let unit = |q: &Rat| q.abs().is_one();
    let integral = k0.minpoly(&phi).coeffs().iter().all(|c| c.is_integer())
        && k0.minpoly(&psi).coeffs().iter().all(|c| c.is_integer());
    let status = if unit(&nphi) && unit(&npsi) && integral {
        ConditionStatus::Satisfied
    } else {
        ConditionStatus::Failed
    };
    Condition::new(status, format!("N(phi) = {}, N(psi) = {}", nphi, npsi))
}

fn separable_condition(s: &NormalForm) -> Condition {
    let t = &s.tower;
    let k0 = &t.k0;
    let phi = k0.generator();
    let rule = t.psi_rule.map(k0.clone(), |c| k0.from_rat(c.clone()));
    let ratio = match k0.div(&rule.eval(&phi), &phi) {
        Some(r) => r,
        None => return Condition::new(ConditionStatus::Failed, "phi = 0"),
    };
    let mp = k0.minpoly(&ratio);
    let status = match reduce_mod_p(&mp, PrimeField::new(3)) {
        Some(r) if r.degree() == mp.degree() && r.is_squarefree() => ConditionStatus::Satisfied,
        Some(_) => ConditionStatus::Failed,
        None => ConditionStatus::Unknown,
    };
    Condition::new(status, format!("minpoly(psi/phi) = {}", mp))
}

/// The valuation test at the primes of `K` over each `p | d` that are inert in
/// `L`. A prime failing it still counts when a local point was certified.
fn bad_prime_condition(s: &NormalForm, places: &[(Place, LocalPoint)]) -> Condition {
    let t = &s.tower;
    let ps = match prime_divisors(s.d.numer()) {
        Ok(ps) => ps,
        Err(e) => return Condition::new(ConditionStatus::Unknown, e.to_string()),
    };
    let mut status = ConditionStatus::Satisfied;
    let mut notes = Vec::new();
    for p in ps {
        let test = (|| -> Result<bool> {
            for q in t.primes_of_k(p)? {
                if t.behaviour_in_l(&q)? != PrimeBehaviour::Inert {
                    continue;
                }
                let (vt, vtb) = theta_valuations(s, &q)?;
                let vd = rational_valuation(&s.d, &q);
                let ok = (vd <= vt && vtb == 0) || (vd <= vtb && vt == 0);
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        if let Ok(true) = test {
            notes.push(format!("{}: valuation test", p));
            continue;
        }
        let point = places
            .iter()
            .find(|(pl, _)| *pl == Place::Finite(p))
            .map(|(_, pt)| pt.exists())
            .unwrap_or(false);
        if point {
            notes.push(format!("{}: local point", p));
            if status == ConditionStatus::Satisfied {
                status = ConditionStatus::SatisfiedByLocalPoint;
            }
        } else {
            notes.push(format!("{}: no point", p));
            status = match test {
                Ok(false) => ConditionStatus::Failed,
                _ if status == ConditionStatus::Failed => ConditionStatus::Failed,
                _ => ConditionStatus::Unknown,
            };
        }
    }
    if notes.is_empty() {
        notes.push("d is a unit".into());
    }
    Condition::new(status, notes.join(", "))
}

pub fn check_adelic_hypotheses(s: &NormalForm) -> AdelicReport {
    let places = match local_points(s) {
        Ok(pl) => pl,
        Err(e) => vec![(
            Place::Real,
            LocalPoint::NotFound {
                reason: e.to_string(),
            },
        )],
    };
    AdelicReport {
        unramified: unramified_condition(s),
        unit_norms: unit_norm_condition(s),
        separable_mod_3: separable_condition(s),
        bad_primes: bad_prime_condition(s, &places),
        places,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rationale {
    SplitPrime,
    InertZeroValuation,
    ObstructingPrime,
    Archimedean,
}

impl Rationale {
    pub fn label(self) -> &'static str {
        match self {
            Self::SplitPrime => "split",
            Self::InertZeroValuation => "inert-zero-valuation",
            Self::ObstructingPrime => "obstructing",
            Self::Archimedean => "archimedean",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Self::SplitPrime,
            Self::InertZeroValuation,
            Self::ObstructingPrime,
            Self::Archimedean,
        ]
        .into_iter()
        .find(|r| r.label() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantContribution {
    /// `(p, h)` for the prime `(p, h(ω))` of `K`, or `inf`.
    pub place: String,
    pub p: Option<u64>,
    /// In `{0, 1/3, 2/3}`.
    pub value: Rat,
    pub rationale: Rationale,
}

fn unsupported(prime: &PrimeIdeal, why: &str) -> Error {
    Error::UnsupportedLocalCase(format!("{}: {}", prime.describe(), why))
}

fn thirds(n: i64) -> Rat {
    Rat::new(Int::from(n.rem_euclid(3)), Int::from(3))
}

/// `inv_P` of `((L/K), (x + θ y)/y)_σ`, constant on `X(K_P)`.
pub fn invariant_at(s: &NormalForm, prime: &PrimeIdeal) -> Result<InvariantContribution> {
    let t = &s.tower;
    let contribution = |value, rationale| InvariantContribution {
        place: prime.describe(),
        p: Some(prime.p),
        value,
        rationale,
    };
    let behaviour = match t.behaviour_in_l(prime) {
        Ok(b) => b,
        Err(Error::RamifiedPrime(_)) => return Err(unsupported(prime, "ramified in L/K")),
        Err(e) => return Err(unsupported(prime, &e.to_string())),
    };
    if behaviour == PrimeBehaviour::Split {
        return Ok(contribution(Rat::zero(), Rationale::SplitPrime));
    }
    let (vt, vtb) = theta_valuations(s, prime)?;
    if vt > 0 && vtb > 0 {
        return Err(unsupported(prime, "divides both theta and theta-bar"));
    }
    let n = rational_valuation(&s.d, prime);
    if n.rem_euclid(3) == 0 || vt <= 0 {
        if n.rem_euclid(3) != 0 && vtb <= 0 {
            return Err(unsupported(prime, "no local points"));
        }
        return Ok(contribution(Rat::zero(), Rationale::InertZeroValuation));
    }
    let j = t
        .frobenius_j(prime)
        .map_err(|e| unsupported(prime, &e.to_string()))?;
    Ok(contribution(
        thirds(-n * j as i64),
        Rationale::ObstructingPrime,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSum {
    pub contributions: Vec<InvariantContribution>,
    pub total: Rat,
}

impl InvariantSum {
    pub fn nonzero(&self) -> Vec<&InvariantContribution> {
        self.contributions
            .iter()
            .filter(|c| !c.value.is_zero())
            .collect()
    }
}

pub fn invariant_sum(s: &NormalForm) -> Result<InvariantSum> {
    let t = &s.tower;
    let mut contributions = Vec::new();
    for p in relevant_primes(s)? {
        for prime in t.primes_of_k(p)? {
            contributions.push(invariant_at(s, &prime)?);
        }
    }
    contributions.push(InvariantContribution {
        place: "inf".into(),
        p: None,
        value: Rat::zero(),
        rationale: Rationale::Archimedean,
    });
    let sum: Rat = contributions.iter().map(|c| c.value.clone()).sum();
    let total = &sum - sum.floor();
    Ok(InvariantSum {
        contributions,
        total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    HasObstruction,
    HassePrincipleHolds,
    Inconclusive,
}

impl VerdictKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::HasObstruction => "has-obstruction",
            Self::HassePrincipleHolds => "hasse-principle-holds",
            Self::Inconclusive => "inconclusive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Self::HasObstruction,
            Self::HassePrincipleHolds,
            Self::Inconclusive,
        ]
        .into_iter()
        .find(|v| v.label() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub brauer: Option<BrauerClass>,
    pub adelic: Option<AdelicReport>,
    pub invariants: Option<InvariantSum>,
    pub reason: Option<String>,
    pub notes: Vec<String>,
}

const SIGMA_NOTE: &str = "values use sigma: phi0 -> phi1; the other generator negates them";

pub fn verdict(s: &NormalForm) -> Verdict {
    verdict_for_class(s, brauer_classify(s))
}

/// The verdict once the Brauer class is known.
pub fn verdict_for_class(s: &NormalForm, brauer: Result<BrauerClass>) -> Verdict {
    let mut v = Verdict {
        kind: VerdictKind::Inconclusive,
        brauer: None,
        adelic: None,
        invariants: None,
        reason: None,
        notes: Vec::new(),
    };
    let brauer = match brauer {
        Ok(b) => b,
        Err(e) => {
            v.reason = Some(format!("Brauer class: {}", e));
            return v;
        }
    };
    v.brauer = Some(brauer.clone());
    if brauer == BrauerClass::Trivial {
        v.kind = VerdictKind::HassePrincipleHolds;
        return v;
    }
    let adelic = check_adelic_hypotheses(s);
    let adelic_ok = adelic.status().holds() && adelic.points_confirmed();
    let missing = adelic.missing_places();
    let status = adelic.status();
    v.adelic = Some(adelic);
    let sum = match invariant_sum(s) {
        Ok(sum) => sum,
        Err(e) => {
            v.reason = Some(e.to_string());
            return v;
        }
    };
    v.notes.push(SIGMA_NOTE.into());
    let total_zero = sum.total.is_zero();
    v.invariants = Some(sum);
    if !adelic_ok {
        v.reason = Some(if missing.is_empty() {
            format!("adelic conditions {}", status.label())
        } else {
            let names: Vec<String> = missing.iter().map(|p| p.to_string()).collect();
            format!("no local point found at {}", names.join(", "))
        });
    } else if total_zero {
        v.reason = Some("invariant sum is zero".into());
    } else {
        v.kind = VerdictKind::HasObstruction;
    }
    v
}
