//! Dense univariate polynomials over a [`Ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};
use crate::{Int, Rat, QQ, ZZ};

/// Coefficients are stored constant term first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone)]
pub struct UniPoly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn zero(ring: R) -> Self {
        UniPoly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Self::new(ring, vec![c])
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn x(ring: R) -> Self {
        Self::monomial(ring.clone(), ring.one(), 1)
    }

    pub fn monomial(ring: R, c: R::Elem, n: usize) -> Self {
        let mut coeffs = vec![ring.zero(); n];
        coeffs.push(c);
        Self::new(ring, coeffs)
    }

    /// `x - a`.
    pub fn linear_root(ring: R, a: &R::Elem) -> Self {
        let c = ring.neg(a);
        let one = ring.one();
        Self::new(ring, vec![c, one])
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn lc(&self) -> R::Elem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> UniPoly<S> {
        let coeffs = self.coeffs.iter().map(f).collect();
        UniPoly::new(ring, coeffs)
    }

    pub fn try_map<S: Ring>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> Option<S::Elem>,
    ) -> Option<UniPoly<S>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(ring, coeffs))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let r = &self.ring;
        Self::new(r.clone(), self.coeffs.iter().map(|a| r.mul(a, c)).collect())
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.ring.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for c in self.coeffs.iter().rev() {
            acc = r.add(&r.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(&r.from_i64(i as i64), c))
            .collect();
        Self::new(r.clone(), coeffs)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(self.ring.clone(), c.clone());
        }
        acc
    }

    /// Reverse of the coefficient list, as a polynomial of degree `<= n`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut coeffs: Vec<R::Elem> = (0..=n).map(|i| self.coeff(i)).collect();
        coeffs.reverse();
        Self::new(self.ring.clone(), coeffs)
    }

    /// Division by a divisor whose leading coefficient has inverse `lc_inv`.
    pub fn divrem_with(&self, g: &Self, lc_inv: &R::Elem) -> (Self, Self) {
        let r = &self.ring;
        let dg = g.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return (Self::zero(r.clone()), self.clone());
        }
        let mut quot = vec![r.zero(); rem.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = r.mul(&rem[i + dg], lc_inv);
            if r.is_zero(&c) {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&c, gc));
            }
            quot[i] = c;
        }
        rem.truncate(dg);
        (Self::new(r.clone(), quot), Self::new(r.clone(), rem))
    }

    /// Division by a monic polynomial; works over any ring.
    pub fn divrem_monic(&self, g: &Self) -> (Self, Self) {
        let one = self.ring.one();
        self.divrem_with(g, &one)
    }
}

impl<R: Field> UniPoly<R> {
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        let inv = self
            .ring
            .inv(&g.lc())
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        Ok(self.divrem_with(g, &inv))
    }

    pub fn rem(&self, g: &Self) -> Self {
        self.divrem(g).expect("nonzero divisor").1
    }

    /// Exact quotient; panics on a nonzero remainder.
    pub fn exact_div(&self, g: &Self) -> Self {
        let (q, r) = self.divrem(g).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, h: &Self) -> bool {
        h.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ring.inv(&self.lc()).unwrap();
        self.scale(&inv)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let ring = self.ring.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ring.clone()), Self::zero(ring.clone()));
        let (mut t0, mut t1) = (Self::zero(ring.clone()), Self::one(ring.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = ring.inv(&r0.lc()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.xgcd(m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// `base^e mod m`.
    pub fn powmod(&self, e: &num_bigint::BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.ring.clone()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    /// `Res(self, other)` by the Euclidean algorithm.
    pub fn resultant(&self, other: &Self) -> Result<R::Elem> {
        let r = self.ring.clone();
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("resultant of two zero polynomials".into()));
        }
        if self.is_zero() || other.is_zero() {
            let nz = if self.is_zero() { other } else { self };
            return Ok(if nz.degree() == Some(0) {
                r.one()
            } else {
                r.zero()
            });
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = r.one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                None => return Ok(r.zero()),
                Some(d) => d,
            };
            if db == 0 {
                return Ok(r.mul(&acc, &r.pow(&b.lc(), da as u64)));
            }
            if da == 0 {
                return Ok(r.mul(&acc, &r.pow(&a.lc(), db as u64)));
            }
            // Res(a, b) = (-1)^{da db} lc(b)^{da - dc} Res(b, c) with c = a mod b.
            let c = a.rem(&b);
            if c.is_zero() {
                return Ok(r.zero());
            }
            let dc = c.degree().unwrap();
            let mut factor = r.pow(&b.lc(), (da - dc) as u64);
            if (da * db) % 2 == 1 {
                factor = r.neg(&factor);
            }
            acc = r.mul(&acc, &factor);
            a = b;
            b = c;
        }
    }

    pub fn discriminant(&self) -> Result<R::Elem> {
        let n = match self.degree() {
            Some(n) if n >= 2 => n,
            _ => return Err(Error::Domain("discriminant needs degree >= 2".into())),
        };
        let r = &self.ring;
        let res = self.resultant(&self.derivative())?;
        let mut d = r.div(&res, &self.lc()).unwrap();
        if (n * (n - 1) / 2) % 2 == 1 {
            d = r.neg(&d);
        }
        Ok(d)
    }

    /// Yun's algorithm; valid in characteristic zero or when the degree is
    /// below the characteristic. Returns monic `(factor, multiplicity)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut d = &df.exact_div(&a0) - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            let c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one(self.ring.clone());
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl UniPoly<crate::QQ> {
    /// Content-free integer polynomial with positive leading coefficient and
    /// the rational `c` with `self = c * result`.
    pub fn primitive_integer(&self) -> (Rat, UniPoly<crate::ZZ>) {
        if self.is_zero() {
            return (Rat::zero(), UniPoly::zero(ZZ));
        }
        let mut den = Int::one();
        for c in &self.coeffs {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = Int::zero();
        for c in &ints {
            g = num_integer::Integer::gcd(&g, c);
        }
        if self.lc().is_negative() {
            g = -g;
        }
        let prim: Vec<Int> = ints.into_iter().map(|c| c / &g).collect();
        (Rat::new(g, den), UniPoly::new(ZZ, prim))
    }
}

impl UniPoly<crate::ZZ> {
    pub fn to_rational(&self) -> UniPoly<crate::QQ> {
        self.map(QQ, |c| Rat::from_integer(c.clone()))
    }

    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Int {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Exact division over `Z`, `None` if `g` does not divide `self`.
    pub fn div_exact_z(&self, g: &Self) -> Option<Self> {
        let (q, r) = self.to_rational().divrem(&g.to_rational()).ok()?;
        if !r.is_zero() || q.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(q.map(ZZ, |c| c.to_integer()))
    }

    pub fn resultant_z(&self, g: &Self) -> Result<Int> {
        Ok(self.to_rational().resultant(&g.to_rational())?.to_integer())
    }

    pub fn discriminant_z(&self) -> Result<Int> {
        Ok(self.to_rational().discriminant()?.to_integer())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, R: Ring> $tr<&'a UniPoly<R>> for &'a UniPoly<R> {
            type Output = UniPoly<R>;
            fn $m(self, rhs: &'a UniPoly<R>) -> UniPoly<R> {
                let f: fn(&UniPoly<R>, &UniPoly<R>) -> UniPoly<R> = $body;
                f(self, rhs)
            }
        }
        impl<R: Ring> $tr<UniPoly<R>> for UniPoly<R> {
            type Output = UniPoly<R>;
            fn $m(self, rhs: UniPoly<R>) -> UniPoly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let r = &a.ring;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    UniPoly::new(r.clone(), coeffs)
});

binop!(Sub, sub, |a, b| {
    let r = &a.ring;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n)
        .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
            (Some(x), Some(y)) => r.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => r.neg(y),
            (None, None) => unreachable!(),
        })
        .collect();
    UniPoly::new(r.clone(), coeffs)
});

binop!(Mul, mul, |a, b| {
    let r = &a.ring;
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero(r.clone());
    }
    let mut coeffs = vec![r.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = r.add(&coeffs[i + j], &r.mul(x, y));
        }
    }
    UniPoly::new(r.clone(), coeffs)
});

impl<R: Ring> Neg for &UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        let r = &self.ring;
        UniPoly::new(r.clone(), self.coeffs.iter().map(|c| r.neg(c)).collect())
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = UniPoly<R>;
    fn neg(self) -> UniPoly<R> {
        -&self
    }
}

impl fmt::Display for UniPoly<crate::QQ> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

impl fmt::Display for UniPoly<crate::ZZ> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|c| c.to_string()).collect())
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: Vec<String>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c.clone()),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_coeff = i == 0 || mag != "1";
        if show_coeff {
            write!(f, "{}", mag)?;
            if i > 0 {
                write!(f, "*")?;
            }
        }
        match i {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{}", i)?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qpoly, rat, zpoly};

    #[test]
    fn resultant_small() {
        let a = qpoly(&[-2, 0, 1]);
        let b = qpoly(&[-3, 0, 1]);
        assert_eq!(a.resultant(&b).unwrap(), rat(1, 1));
        let f = qpoly(&[-1, -1, 0, 1]);
        assert_eq!(f.resultant(&f).unwrap(), rat(0, 1));
        let xa = qpoly(&[-5, 1]);
        let xb = qpoly(&[-7, 1]);
        assert_eq!(xa.resultant(&xb).unwrap(), rat(-2, 1));
    }

    #[test]
    fn discriminants() {
        assert_eq!(qpoly(&[-1, -1, 0, 1]).discriminant().unwrap(), rat(-23, 1));
        assert_eq!(qpoly(&[1, 1, 0, 1]).discriminant().unwrap(), rat(-31, 1));
        assert_eq!(qpoly(&[35, -4, 1]).discriminant().unwrap(), rat(-124, 1));
        assert!(qpoly(&[1, 1]).discriminant().is_err());
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)
        let f = qpoly(&[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part(), qpoly(&[-2, 1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(qpoly(&[2, 1]), 1), (qpoly(&[-1, 1]), 2)]);
    }

    #[test]
    fn xgcd_identity() {
        let a = qpoly(&[-1, 0, 1]);
        let b = qpoly(&[1, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, qpoly(&[1]));
    }

    #[test]
    fn primitive_parts() {
        let f = UniPoly::new(QQ, vec![rat(1, 2), rat(-3, 4)]);
        let (c, p) = f.primitive_integer();
        assert_eq!(c, rat(-1, 4));
        assert_eq!(p, zpoly(&[-2, 3]));
        assert_eq!(format!("{}", zpoly(&[-1, -1, 0, 1])), "x^3 - x - 1");
    }
}
