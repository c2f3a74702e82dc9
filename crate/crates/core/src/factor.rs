//! Factorization over finite fields and over the rationals.
//!
//! Finite fields: squarefree decomposition, distinct-degree splitting, then
//! equal-degree splitting driven by candidate polynomials taken in ascending
//! order, so the output never depends on a random source.
//!
//! Rationals: Zassenhaus. A good prime is chosen, the modular factors are
//! lifted with a quadratic Hensel tree, and true factors are recovered by
//! subset recombination under a Mignotte-type coefficient bound.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, primes_from};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::ring::{FiniteField, IntegersMod, PrimeField};
use crate::{FpPoly, Int, QPoly, Rat, ZPoly, QQ, ZZ};

/// Leading unit and sorted `(monic irreducible, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFactorization<F: FiniteField> {
    pub unit: F::Elem,
    pub factors: Vec<(UniPoly<F>, usize)>,
}

impl<F: FiniteField> FiniteFactorization<F> {
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, e) in &self.factors {
            for _ in 0..*e {
                out.push(g.degree().unwrap());
            }
        }
        out.sort_unstable();
        out
    }

    pub fn expand(&self, ring: F) -> UniPoly<F> {
        let mut acc = UniPoly::constant(ring, self.unit.clone());
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e as u32);
        }
        acc
    }
}

fn cmp_poly<F: FiniteField>(a: &UniPoly<F>, b: &UniPoly<F>) -> Ordering
where
    F::Elem: Ord,
{
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

fn prime_power_exponent<F: FiniteField>(field: &F) -> u32 {
    let p = BigUint::from(field.characteristic());
    let q = field.order();
    let mut k = 0;
    let mut acc = BigUint::one();
    while acc < q {
        acc *= &p;
        k += 1;
    }
    k
}

/// `a^(1/p)` in `F_q`, `q = p^k`: the inverse Frobenius is `a^(p^(k-1))`.
fn pth_root<F: FiniteField>(field: &F, a: &F::Elem) -> F::Elem {
    let k = prime_power_exponent(field);
    let mut r = a.clone();
    for _ in 1..k {
        r = field.frobenius(&r);
    }
    r
}

/// Squarefree decomposition of a monic polynomial over `F_q`.
pub fn squarefree_finite<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let field = f.ring().clone();
    let p = field.characteristic() as usize;
    let one = UniPoly::one(field.clone());
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if c != one {
        let coeffs: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| pth_root(&field, a))
            .collect();
        let root = UniPoly::new(field.clone(), coeffs);
        for (g, e) in squarefree_finite(&root) {
            out.push((g, e * p));
        }
    }
    out
}

/// Product of the distinct monic irreducible factors.
pub fn radical_finite<F: FiniteField>(f: &UniPoly<F>) -> UniPoly<F> {
    let one = UniPoly::one(f.ring().clone());
    squarefree_finite(&f.monic())
        .iter()
        .fold(one, |acc, (g, _)| &acc * g)
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(f: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let field = f.ring().clone();
    let q = field.order();
    let x = UniPoly::x(field.clone());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&q, &rest);
        let g = (&h - &x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

/// Candidate splitting polynomials of degree below `n`, ascending.
fn candidate<F: FiniteField>(field: &F, mut index: u64, n: usize) -> Option<UniPoly<F>> {
    let q = field.order().to_u64().unwrap_or(u64::MAX);
    let mut coeffs = Vec::new();
    while index > 0 {
        coeffs.push(field.element(index % q));
        index /= q;
    }
    if coeffs.len() > n {
        return None;
    }
    Some(UniPoly::new(field.clone(), coeffs))
}

/// Equal-degree splitting of a squarefree monic product of degree-`d`
/// irreducibles.
pub fn equal_degree<F: FiniteField>(f: &UniPoly<F>, d: usize) -> Vec<UniPoly<F>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.ring().clone();
    let p = field.characteristic();
    let q = field.order();
    let one = UniPoly::one(field.clone());
    let mut index = 1u64;
    loop {
        let a = candidate(&field, index, n).expect("equal-degree split exhausted candidates");
        index += 1;
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace from GF(q^d) to F_2.
            let k = prime_power_exponent(&field) as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            &a.powmod(&e, f) - &one
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&f.exact_div(&g), d));
            return out;
        }
    }
}

/// Complete factorization over a finite field, deterministic.
pub fn factor_finite<F: FiniteField>(f: &UniPoly<F>) -> Result<FiniteFactorization<F>>
where
    F::Elem: Ord,
{
    if f.is_zero() {
        return Err(Error::Domain("factorization of the zero polynomial".into()));
    }
    let unit = f.lc();
    let monic = f.monic();
    let mut factors = Vec::new();
    for (g, e) in squarefree_finite(&monic) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                factors.push((irr, e));
            }
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(FiniteFactorization { unit, factors })
}

/// Factorization of a rational polynomial modulo `p`.
pub fn factor_mod_p(f: &QPoly, p: u64) -> Result<FiniteFactorization<PrimeField>> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{} is not prime", p)));
    }
    let fp = PrimeField::new(p);
    let g = reduce_mod_p(f, fp)
        .ok_or_else(|| Error::Argument(format!("denominator divisible by {}", p)))?;
    factor_finite(&g)
}

pub fn reduce_mod_p(f: &QPoly, fp: PrimeField) -> Option<FpPoly> {
    f.try_map(fp, |c| fp.reduce_rat(c))
}

pub fn reduce_z_mod_p(f: &ZPoly, fp: PrimeField) -> FpPoly {
    f.map(fp, |c| fp.reduce_int(c))
}

pub fn is_irreducible_mod_p(f: &FpPoly) -> bool {
    match factor_finite(f) {
        Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// Rational factorization: `unit * prod(factor^mult)`, factors primitive
/// integer polynomials with positive leading coefficient, sorted by degree
/// then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFactorization {
    pub unit: Rat,
    pub factors: Vec<(ZPoly, usize)>,
}

impl RationalFactorization {
    pub fn expand(&self) -> QPoly {
        let mut acc = UniPoly::constant(QQ, self.unit.clone());
        for (g, e) in &self.factors {
            acc = &acc * &g.to_rational().pow(*e as u32);
        }
        acc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.degree().unwrap(), *e))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Monic rational factors.
    pub fn monic_factors(&self) -> Vec<(QPoly, usize)> {
        self.factors
            .iter()
            .map(|(g, e)| (g.to_rational().monic(), *e))
            .collect()
    }
}

fn cmp_zpoly(a: &ZPoly, b: &ZPoly) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

pub fn factor_over_rationals(f: &QPoly) -> Result<RationalFactorization> {
    if f.is_zero() {
        return Err(Error::Domain("factorization of the zero polynomial".into()));
    }
    let mut factors: Vec<(ZPoly, usize)> = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        let (_, prim) = g.primitive_integer();
        for h in zassenhaus(&prim) {
            factors.push((h, e));
        }
    }
    factors.sort_by(|a, b| cmp_zpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut lc = Rat::one();
    for (g, e) in &factors {
        lc *= Rat::from_integer(g.lc().pow(*e as u32));
    }
    Ok(RationalFactorization {
        unit: f.lc() / lc,
        factors,
    })
}

pub fn is_irreducible_q(f: &QPoly) -> Result<bool> {
    Ok(f.degree().unwrap_or(0) >= 1 && factor_over_rationals(f)?.is_irreducible())
}

/// Number of primes examined when picking the lifting prime.
const PRIME_CANDIDATES: usize = 6;

/// Chooses the lifting prime: among the first few primes not dividing
/// `lc * disc`, the one giving the fewest modular factors (smallest on ties).
pub fn choose_prime(h: &ZPoly) -> (u64, FiniteFactorization<PrimeField>) {
    let lc = h.lc();
    let mut best: Option<(u64, FiniteFactorization<PrimeField>)> = None;
    let mut seen = 0;
    for p in primes_from(2) {
        if (&lc % Int::from(p)).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p);
        let hp = reduce_z_mod_p(h, fp);
        if !hp.is_squarefree() {
            continue;
        }
        let fac = factor_finite(&hp).unwrap();
        let better = match &best {
            None => true,
            Some((_, b)) => fac.factors.len() < b.factors.len(),
        };
        if better {
            best = Some((p, fac));
        }
        seen += 1;
        if seen == PRIME_CANDIDATES {
            break;
        }
    }
    best.unwrap()
}

fn to_mod(f: &ZPoly, ring: &IntegersMod) -> UniPoly<IntegersMod> {
    f.map(ring.clone(), |c| ring.reduce(c))
}

fn fp_to_mod(f: &FpPoly, ring: &IntegersMod) -> UniPoly<IntegersMod> {
    f.map(ring.clone(), |c| Int::from(*c))
}

fn remod(f: &UniPoly<IntegersMod>, ring: &IntegersMod) -> UniPoly<IntegersMod> {
    f.map(ring.clone(), |c| ring.reduce(c))
}

/// One quadratic Hensel step from modulus `m` to `big`, `m | big | m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    big: &IntegersMod,
    f: &UniPoly<IntegersMod>,
    g: &UniPoly<IntegersMod>,
    h: &UniPoly<IntegersMod>,
    s: &UniPoly<IntegersMod>,
    t: &UniPoly<IntegersMod>,
) -> [UniPoly<IntegersMod>; 4] {
    let (g, h, s, t) = (remod(g, big), remod(h, big), remod(s, big), remod(t, big));
    let e = &remod(f, big) - &(&g * &h);
    let (q, r) = (&s * &e).divrem_monic(&h);
    let g2 = &(&g + &(&t * &e)) + &(&q * &g);
    let h2 = &h + &r;
    let b = &(&(&s * &g2) + &(&t * &h2)) - &UniPoly::one(big.clone());
    let (c, d) = (&s * &b).divrem_monic(&h2);
    let s2 = &s - &d;
    let t2 = &(&t - &(&t * &b)) - &(&c * &g2);
    [g2, h2, s2, t2]
}

/// Lifts `f = lc * prod(factors) mod p` to monic factors modulo `p^k`.
fn lift_tree(
    f: &UniPoly<IntegersMod>,
    factors: &[FpPoly],
    p: u64,
    target: &Int,
) -> Vec<UniPoly<IntegersMod>> {
    let top = IntegersMod::new(target.clone());
    if factors.len() == 1 {
        let lc_inv = mod_inverse(&f.lc(), target);
        return vec![remod(f, &top).scale(&lc_inv)];
    }
    let fp = PrimeField::new(p);
    let mid = factors.len() / 2;
    let prod = |fs: &[FpPoly]| fs.iter().fold(UniPoly::one(fp), |acc, g| &acc * g);
    let lc_p = fp.reduce_int(&f.lc());
    let g0 = prod(&factors[..mid]).scale(&lc_p);
    let h0 = prod(&factors[mid..]);
    let (one, s0, t0) = g0.xgcd(&h0);
    debug_assert_eq!(one.degree(), Some(0));

    let mut m = Int::from(p);
    let base = IntegersMod::new(m.clone());
    let (mut g, mut h) = (fp_to_mod(&g0, &base), fp_to_mod(&h0, &base));
    let (mut s, mut t) = (fp_to_mod(&s0, &base), fp_to_mod(&t0, &base));
    while &m < target {
        let next = (&m * &m).min(target.clone());
        let ring = IntegersMod::new(next.clone());
        [g, h, s, t] = hensel_step(&ring, f, &g, &h, &s, &t);
        m = next;
    }
    let mut out = lift_tree(&g, &factors[..mid], p, target);
    out.extend(lift_tree(&h, &factors[mid..], p, target));
    out
}

/// Lifts pairwise coprime monic factors of `f mod p` to monic factors
/// modulo `modulus`, a power of `p`. Coefficients lie in `[0, modulus)`.
pub fn hensel_lift(f: &ZPoly, factors: &[FpPoly], p: u64, modulus: &Int) -> Vec<ZPoly> {
    let ring = IntegersMod::new(modulus.clone());
    lift_tree(&to_mod(f, &ring), factors, p, modulus)
        .into_iter()
        .map(|g| g.map(ZZ, |c| c.clone()))
        .collect()
}

fn mod_inverse(a: &Int, m: &Int) -> Int {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial.
fn zassenhaus(h: &ZPoly) -> Vec<ZPoly> {
    let n = h.degree().unwrap_or(0);
    if n <= 1 {
        return if n == 1 { vec![h.clone()] } else { vec![] };
    }
    let (p, fac) = choose_prime(h);
    if fac.factors.len() == 1 {
        return vec![h.clone()];
    }
    let lc = h.lc().abs();
    let bound = &lc * (Int::one() << (n + 1)) * h.l1_norm() * 2;
    let mut modulus = Int::from(p);
    while modulus <= bound {
        modulus *= p;
    }
    let ring = IntegersMod::new(modulus.clone());
    let modular: Vec<FpPoly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
    let lifted = lift_tree(&to_mod(h, &ring), &modular, p, &modulus);

    let mut remaining = h.clone();
    let mut pool: Vec<UniPoly<IntegersMod>> = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc_r = ring.reduce(&remaining.lc());
            let mut cand = UniPoly::constant(ring.clone(), lc_r);
            for &i in &subset {
                cand = &cand * &pool[i];
            }
            let cand_z = cand.map(ZZ, |c| ring.symmetric(c));
            let content = cand_z.content();
            let mut prim = cand_z.map(ZZ, |c| c / &content);
            if prim.lc().is_negative() {
                prim = -prim;
            }
            if let Some(q) = remaining.div_exact_z(&prim) {
                remaining = q;
                found.push(prim);
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
                continue 'outer;
            }
            if !next_subset(&mut subset, pool.len()) {
                break;
            }
        }
        size += 1;
    }
    if remaining.degree().unwrap_or(0) > 0 {
        if remaining.lc().is_negative() {
            remaining = -remaining;
        }
        found.push(remaining);
    }
    found
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Rational roots of `f`, ascending.
pub fn rational_roots(f: &QPoly) -> Result<Vec<Rat>> {
    let fac = factor_over_rationals(f)?;
    let mut roots: Vec<Rat> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| Rat::new(-g.coeff(0), g.coeff(1)))
        .collect();
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qpoly, zpoly};

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        UniPoly::new(PrimeField::new(p), c.to_vec())
    }

    #[test]
    fn mod_p_examples() {
        let f = factor_mod_p(&qpoly(&[-1, -1, 0, 1]), 2).unwrap();
        assert_eq!(f.degrees(), vec![3]);
        let g = factor_mod_p(&qpoly(&[6, -1, 1]), 2).unwrap();
        assert_eq!(g.factors, vec![(fp(2, &[0, 1]), 1), (fp(2, &[1, 1]), 1)]);
        let h = factor_mod_p(&qpoly(&[1, 1, 0, 1]), 5).unwrap();
        assert_eq!(h.degrees(), vec![3]);
        assert!(factor_mod_p(&qpoly(&[1, 1]), 9).is_err());
    }

    #[test]
    fn mod_p_with_repeats() {
        // (x+1)^4 (x^2+x+1) over F_2 and F_3 stress the p-th root branch.
        for p in [2u64, 3] {
            let field = PrimeField::new(p);
            let a = fp(p, &[1, 1]).pow(4);
            let b = fp(p, &[1, 1, 1]);
            let f = &a * &b;
            let fac = factor_finite(&f).unwrap();
            assert_eq!(fac.expand(field), f);
        }
    }

    #[test]
    fn radical_in_characteristic_two() {
        assert_eq!(radical_finite(&fp(2, &[0, 0, 1])), fp(2, &[0, 1]));
        assert_eq!(radical_finite(&fp(3, &[1, 0, 0, 1])), fp(3, &[1, 1]));
    }

    #[test]
    fn rational_examples() {
        let f = factor_over_rationals(&qpoly(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(zpoly(&[-1, 1]), 1), (zpoly(&[1, 1]), 1)]);
        let prod = &qpoly(&[-1, -1, 0, 1]) * &qpoly(&[23, 0, 1]);
        let g = factor_over_rationals(&prod).unwrap();
        assert_eq!(
            g.factors,
            vec![(zpoly(&[23, 0, 1]), 1), (zpoly(&[-1, -1, 0, 1]), 1)]
        );
        assert_eq!(g.expand(), prod);
    }

    #[test]
    fn swinnerton_dyer_polynomial() {
        // x^4 - 10x^2 + 1 splits modulo every prime, so recombination is exercised.
        let f = qpoly(&[1, 0, -10, 0, 1]);
        assert!(factor_over_rationals(&f).unwrap().is_irreducible());
        let g = &f * &qpoly(&[1, 0, -10, 0, 1]).compose(&qpoly(&[1, 1]));
        let fac = factor_over_rationals(&g).unwrap();
        assert_eq!(fac.degrees(), vec![4, 4]);
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn content_and_multiplicity() {
        let f = &(&qpoly(&[-2, 2]).pow(2) * &qpoly(&[3, 0, 6])) * &qpoly(&[5]);
        let fac = factor_over_rationals(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.degrees(), vec![1, 1, 2]);
    }
}
