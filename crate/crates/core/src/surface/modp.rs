//! Reductions modulo primes: singularity scan and the line count oracle.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{is_prime, lcm_u64, valuation_rat};
use crate::error::{Error, Result};
use crate::factor::{factor_finite, factor_mod_p, reduce_mod_p};
use crate::form::Form;
use crate::gf::GaloisField;
use crate::ring::{FiniteField, PrimeField, Ring};

use super::geometry::{pairwise_distinct, rref, Geometry};
use super::NormalForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothnessScan {
    /// No singular point over `F_p` for the checked primes. This is evidence,
    /// not a proof of smoothness; `unchecked` is set when no prime was usable.
    NoSingularityFound {
        checked: Vec<u64>,
        unchecked: bool,
    },
    SingularMod(u64),
}

/// Reduction of the equation, or `None` if `p` divides a denominator.
pub fn reduce_equation(s: &NormalForm, fp: PrimeField) -> Option<Form<PrimeField>> {
    if s.equation.terms().any(|(_, c)| fp.reduce_rat(c).is_none()) {
        return None;
    }
    Some(s.equation.map(fp, |c| fp.reduce_rat(c).unwrap()))
}

/// Projective points of `P^3(F_p)` with first nonzero coordinate `1`.
pub fn projective_points(p: u64) -> impl Iterator<Item = [u64; 4]> {
    (0..4usize).flat_map(move |lead| {
        let free = 3 - lead;
        let count = p.pow(free as u32);
        (0..count).map(move |mut idx| {
            let mut pt = [0u64; 4];
            pt[lead] = 1;
            for c in pt.iter_mut().skip(lead + 1) {
                *c = idx % p;
                idx /= p;
            }
            pt
        })
    })
}

fn singular_point(f: &Form<PrimeField>) -> bool {
    let partials: Vec<Form<PrimeField>> = (0..4).map(|i| f.partial(i)).collect();
    let fp = *f.ring();
    projective_points(fp.modulus())
        .any(|pt| fp.is_zero(&f.eval(&pt)) && partials.iter().all(|g| fp.is_zero(&g.eval(&pt))))
}

pub fn smoothness_scan(s: &NormalForm, primes: &[u64]) -> SmoothnessScan {
    let mut checked = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            continue;
        }
        let fp = PrimeField::new(p);
        let Some(f) = reduce_equation(s, fp) else {
            continue;
        };
        if singular_point(&f) {
            return SmoothnessScan::SingularMod(p);
        }
        checked.push(p);
    }
    let unchecked = checked.is_empty();
    SmoothnessScan::NoSingularityFound { checked, unchecked }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPLines {
    pub p: u64,
    /// Lines of `P^3(F_p)` inside the reduction, found by exhaustion.
    pub enumerated: usize,
    /// Frobenius-fixed lines among the 27 computed over `GF(p^m)`.
    pub predicted: usize,
    /// Sizes of the Frobenius orbits on the 27 lines, sorted.
    pub orbit_sizes: Vec<usize>,
    /// Degree of the field of definition of the lines over `F_p`.
    pub field_degree: usize,
}

fn bad_reduction(p: u64, why: &str) -> Error {
    Error::Argument(format!("bad reduction at {}: {}", p, why))
}

/// Checks the conditions under which the reduction is a smooth surface of
/// the same shape.
fn check_good_prime(s: &NormalForm, p: u64) -> Result<Form<PrimeField>> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{} is not prime", p)));
    }
    let t = &s.tower;
    let fp = PrimeField::new(p);
    let f = reduce_equation(s, fp).ok_or_else(|| bad_reduction(p, "denominator"))?;
    if valuation_rat(&s.d, p) != 0 {
        return Err(bad_reduction(p, "p divides d"));
    }
    for (poly, name) in [(&t.f, "cubic"), (&t.theta_poly, "theta polynomial")] {
        let r = reduce_mod_p(poly, fp).ok_or_else(|| bad_reduction(p, name))?;
        if !r.is_squarefree() || r.degree() != poly.degree() {
            return Err(bad_reduction(p, name));
        }
    }
    if reduce_mod_p(&t.psi_rule, fp).is_none() {
        return Err(bad_reduction(p, "psi rule"));
    }
    if singular_point(&f) {
        return Err(bad_reduction(p, "singular reduction"));
    }
    Ok(f)
}

fn geometry_over(s: &NormalForm, k: &GaloisField) -> Result<Geometry<GaloisField>> {
    let t = &s.tower;
    let fp = k.prime_field();
    let lift = |poly| k.lift_poly(&reduce_mod_p(poly, fp).unwrap());
    let phis = k.roots(&lift(&t.f));
    let thetas = k.roots(&lift(&t.theta_poly));
    if phis.len() != 3 || thetas.len() != 2 {
        return Err(Error::Geometry("roots missing in residue field".into()));
    }
    let rule = lift(&t.psi_rule);
    let psi = [
        rule.eval(&phis[0]),
        rule.eval(&phis[1]),
        rule.eval(&phis[2]),
    ];
    let d = k.from_prime(fp.reduce_rat(&s.d).unwrap());
    Geometry::new(
        k.clone(),
        [phis[0].clone(), phis[1].clone(), phis[2].clone()],
        psi,
        thetas[0].clone(),
        thetas[1].clone(),
        d,
    )
    .map_err(|_| bad_reduction(fp.modulus(), "degenerate conjugates"))
}

fn degree_lcm(degrees: &[usize]) -> usize {
    degrees.iter().fold(1u64, |a, &d| lcm_u64(a, d as u64)) as usize
}

/// Count of `F_p`-rational lines by exhaustion and by Frobenius action on the
/// 27 lines computed over a finite extension.
pub fn lines_mod_p(s: &NormalForm, p: u64) -> Result<ModPLines> {
    let eq = check_good_prime(s, p)?;
    let t = &s.tower;
    let mut degrees = factor_mod_p(&t.f, p)?.degrees();
    degrees.extend(factor_mod_p(&t.theta_poly, p)?.degrees());
    let m0 = degree_lcm(&degrees);
    let k0 = GaloisField::new(p, m0);
    let g0 = geometry_over(s, &k0)?.resolvent();
    let gdeg = factor_finite(&g0)?;
    if gdeg.factors.iter().any(|(_, e)| *e > 1) {
        return Err(bad_reduction(p, "resolvent not separable"));
    }
    let m = m0 * degree_lcm(&gdeg.degrees());

    let k = GaloisField::new(p, m);
    let geo = geometry_over(s, &k)?;
    let roots = k.roots(&geo.resolvent());
    if roots.len() != 3 {
        return Err(bad_reduction(p, "resolvent roots"));
    }
    let lines = geo.all_lines(&[roots[0].clone(), roots[1].clone(), roots[2].clone()])?;
    if !lines.iter().all(|l| geo.contains(l)) || !pairwise_distinct(&k, &lines) {
        return Err(Error::Geometry(format!(
            "line computation failed mod {}",
            p
        )));
    }
    let keys: Vec<[Vec<Vec<u64>>; 2]> = lines
        .iter()
        .map(|l| rref(&k, &l.rows).expect("rank 2"))
        .collect();
    let index: BTreeMap<&[Vec<Vec<u64>>; 2], usize> =
        keys.iter().enumerate().map(|(i, key)| (key, i)).collect();
    let frob: Vec<usize> = keys
        .iter()
        .map(|key| {
            let image = key
                .clone()
                .map(|row| row.iter().map(|c| k.frobenius(c)).collect());
            *index.get(&image).expect("Frobenius permutes the lines")
        })
        .collect();
    let mut seen = vec![false; 27];
    let mut orbit_sizes = Vec::new();
    for start in 0..27 {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = frob[cur];
            len += 1;
        }
        orbit_sizes.push(len);
    }
    orbit_sizes.sort();
    let predicted = orbit_sizes.iter().filter(|&&n| n == 1).count();

    Ok(ModPLines {
        p,
        enumerated: count_lines(&eq),
        predicted,
        orbit_sizes,
        field_degree: m,
    })
}

/// Rank-2 matrices in reduced row echelon form over `F_p`, one per line of
/// `P^3(F_p)`.
pub fn grassmannian(p: u64) -> Vec<[[u64; 4]; 2]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            // Free entries: row 0 at columns > a other than b, row 1 at columns > b.
            let free0: Vec<usize> = (a + 1..4).filter(|&c| c != b).collect();
            let free1: Vec<usize> = (b + 1..4).collect();
            let n = free0.len() + free1.len();
            for mut idx in 0..p.pow(n as u32) {
                let mut m = [[0u64; 4]; 2];
                m[0][a] = 1;
                m[1][b] = 1;
                for &c in free0.iter() {
                    m[0][c] = idx % p;
                    idx /= p;
                }
                for &c in free1.iter() {
                    m[1][c] = idx % p;
                    idx /= p;
                }
                out.push(m);
            }
        }
    }
    out
}

/// Lines of `P^3(F_p)` on which the form vanishes identically.
pub fn count_lines(f: &Form<PrimeField>) -> usize {
    let fp = *f.ring();
    grassmannian(fp.modulus())
        .iter()
        .filter(|m| f.binary_coeffs(&m[0], &m[1]).iter().all(|c| c.is_zero()))
        .count()
}
