//! Number fields as towers of simple extensions of `Q`.
//!
//! A field is either `Q` itself or `B[y] / (m(y))` for a base field `B` and
//! a monic irreducible `m`. Elements are flat coordinate vectors over `Q`:
//! the coordinate of `y^i` occupies the `i`-th chunk of length `[B:Q]`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::factor_over_rationals;
use crate::poly::UniPoly;
use crate::ring::{Field, Ring};
use crate::{NfPoly, QPoly, Rat, QQ};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NfElem(pub Vec<Rat>);

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

struct Inner {
    name: String,
    base: Option<NumberField>,
    /// Monic defining polynomial over the base, flat coefficients.
    modulus: Vec<Vec<Rat>>,
    rel_degree: usize,
    abs_degree: usize,
    primitive: OnceLock<(NfElem, QPoly)>,
}

#[derive(Clone)]
pub struct NumberField(Arc<Inner>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NumberField({}, degree {})",
            self.0.name, self.0.abs_degree
        )
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

static RATIONALS: OnceLock<NumberField> = OnceLock::new();

impl NumberField {
    /// `Q` as a degree-one field.
    pub fn rationals() -> NumberField {
        RATIONALS
            .get_or_init(|| {
                NumberField(Arc::new(Inner {
                    name: "Q".into(),
                    base: None,
                    modulus: vec![vec![Rat::zero()], vec![Rat::one()]],
                    rel_degree: 1,
                    abs_degree: 1,
                    primitive: OnceLock::new(),
                }))
            })
            .clone()
    }

    /// `Q[x] / (g)`; `g` must be irreducible.
    pub fn from_rational_poly(g: &QPoly, name: &str) -> Result<NumberField> {
        if g.degree().unwrap_or(0) < 1 || !factor_over_rationals(g)?.is_irreducible() {
            return Err(Error::Domain(format!("{} is not irreducible over Q", g)));
        }
        let q = NumberField::rationals();
        let lifted = g.monic().map(q.clone(), |c| NfElem(vec![c.clone()]));
        Ok(NumberField::extension_unchecked(&q, &lifted, name))
    }

    /// `B[y] / (m)` with `m` checked irreducible over `B`.
    pub fn extension(base: &NumberField, m: &NfPoly, name: &str) -> Result<NumberField> {
        if m.degree().unwrap_or(0) < 1 {
            return Err(Error::Domain("extension by a constant".into()));
        }
        let fac = nf_factor(m)?;
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(Error::Domain(format!(
                "defining polynomial is reducible over {}",
                base.name()
            )));
        }
        Ok(NumberField::extension_unchecked(base, m, name))
    }

    /// `B[y] / (m)` when irreducibility is known by construction.
    pub fn extension_unchecked(base: &NumberField, m: &NfPoly, name: &str) -> NumberField {
        assert!(m.ring() == base, "defining polynomial over the wrong field");
        let m = m.monic();
        let n = m.degree().expect("nonzero modulus");
        assert!(n >= 1);
        NumberField(Arc::new(Inner {
            name: name.into(),
            base: Some(base.clone()),
            modulus: m.coeffs().iter().map(|c| c.0.clone()).collect(),
            rel_degree: n,
            abs_degree: n * base.degree(),
            primitive: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn degree(&self) -> usize {
        self.0.abs_degree
    }

    pub fn relative_degree(&self) -> usize {
        self.0.rel_degree
    }

    pub fn base(&self) -> Option<&NumberField> {
        self.0.base.as_ref()
    }

    pub fn is_rationals(&self) -> bool {
        self.0.base.is_none()
    }

    /// Defining polynomial over the base.
    pub fn modulus(&self) -> NfPoly {
        let base = self.base().expect("Q has no defining polynomial").clone();
        UniPoly::new(
            base,
            self.0.modulus.iter().map(|c| NfElem(c.clone())).collect(),
        )
    }

    /// Defining polynomial over `Q` for a simple extension of `Q`.
    pub fn rational_modulus(&self) -> Option<QPoly> {
        match self.base() {
            Some(b) if b.is_rationals() => Some(UniPoly::new(
                QQ,
                self.0.modulus.iter().map(|c| c[0].clone()).collect(),
            )),
            _ => None,
        }
    }

    pub fn from_rat(&self, q: Rat) -> NfElem {
        let mut v = vec![Rat::zero(); self.degree()];
        v[0] = q;
        NfElem(v)
    }

    /// The adjoined root `y`.
    pub fn generator(&self) -> NfElem {
        match self.base() {
            None => self.one(),
            Some(_) if self.0.rel_degree == 1 => {
                self.embed_base(&NfElem(self.0.modulus[0].iter().map(|c| -c).collect()))
            }
            Some(b) => {
                let mut v = vec![Rat::zero(); self.degree()];
                v[b.degree()] = Rat::one();
                NfElem(v)
            }
        }
    }

    pub fn embed_base(&self, a: &NfElem) -> NfElem {
        let mut v = a.0.clone();
        v.resize(self.degree(), Rat::zero());
        NfElem(v)
    }

    /// Embeds an element of any field below this one in the tower.
    pub fn embed_from(&self, from: &NumberField, a: &NfElem) -> NfElem {
        assert!(self.has_subfield(from), "not a subfield in this tower");
        let mut v = a.0.clone();
        v.resize(self.degree(), Rat::zero());
        NfElem(v)
    }

    pub fn has_subfield(&self, other: &NumberField) -> bool {
        let mut cur = Some(self);
        while let Some(c) = cur {
            if c == other || (other.is_rationals() && c.is_rationals()) {
                return true;
            }
            cur = c.base();
        }
        false
    }

    /// Coordinates restricted to a subfield, if `a` lies there.
    pub fn restrict(&self, to: &NumberField, a: &NfElem) -> Option<NfElem> {
        assert!(self.has_subfield(to));
        let d = to.degree();
        if a.0[d..].iter().all(|c| c.is_zero()) {
            Some(NfElem(a.0[..d].to_vec()))
        } else {
            None
        }
    }

    pub fn as_rational(&self, a: &NfElem) -> Option<Rat> {
        if a.0[1..].iter().all(|c| c.is_zero()) {
            Some(a.0[0].clone())
        } else {
            None
        }
    }

    /// Element as a polynomial in `y` over the base.
    pub fn to_poly(&self, a: &NfElem) -> NfPoly {
        let base = self.base().expect("no base field").clone();
        let b = base.degree();
        UniPoly::new(base, a.0.chunks(b).map(|c| NfElem(c.to_vec())).collect())
    }

    /// Reduces a polynomial over the base modulo the defining polynomial.
    pub fn from_poly(&self, p: &NfPoly) -> NfElem {
        let base = self.base().expect("no base field");
        let b = base.degree();
        let n = self.0.rel_degree;
        let mut chunks: Vec<Vec<Rat>> = p.coeffs().iter().map(|c| c.0.clone()).collect();
        reduce_chunks(base, &self.0.modulus, n, &mut chunks);
        let mut v = Vec::with_capacity(n * b);
        for i in 0..n {
            match chunks.get(i) {
                Some(c) => v.extend(c.iter().cloned()),
                None => v.extend(std::iter::repeat_n(Rat::zero(), b)),
            }
        }
        NfElem(v)
    }

    /// `N_{F/B}(a)`.
    pub fn norm_to_base(&self, a: &NfElem) -> NfElem {
        let base = self.base().expect("no base field");
        if self.is_zero(a) {
            return base.zero();
        }
        self.modulus()
            .resultant(&self.to_poly(a))
            .expect("nonzero inputs")
    }

    /// `N_{F/Q}(a)`.
    pub fn norm(&self, a: &NfElem) -> Rat {
        let mut field = self.clone();
        let mut x = a.clone();
        while let Some(b) = field.base().cloned() {
            x = field.norm_to_base(&x);
            field = b;
        }
        x.0[0].clone()
    }

    /// `Tr_{F/Q}(a)` from the characteristic polynomial.
    pub fn trace(&self, a: &NfElem) -> Rat {
        let cp = self.charpoly(a);
        let n = self.degree();
        -cp.coeff(n - 1)
    }

    /// Characteristic polynomial of `a` over `Q`.
    pub fn charpoly(&self, a: &NfElem) -> QPoly {
        let x_minus_a = UniPoly::new(self.clone(), vec![self.neg(a), self.one()]);
        norm_poly(&x_minus_a)
    }

    /// Minimal polynomial of `a` over `Q`, monic.
    pub fn minpoly(&self, a: &NfElem) -> QPoly {
        self.charpoly(a).squarefree_part()
    }

    /// An element generating the field over `Q`, with its minimal polynomial.
    pub fn primitive_element(&self) -> (NfElem, QPoly) {
        self.0
            .primitive
            .get_or_init(|| {
                let base = match self.base() {
                    None => return (self.one(), crate::qpoly(&[-1, 1])),
                    Some(b) => b,
                };
                let y = self.generator();
                if base.is_rationals() {
                    return (y.clone(), self.charpoly(&y));
                }
                let (beta, _) = base.primitive_element();
                let beta = self.embed_base(&beta);
                for c in 0i64.. {
                    let g = self.add(&y, &self.mul(&self.from_i64(c), &beta));
                    let cp = self.charpoly(&g);
                    if cp.is_squarefree() {
                        return (g, cp);
                    }
                }
                unreachable!()
            })
            .clone()
    }

    /// Applies `sigma` given on the generator: the base-linear map sending
    /// `y` to `image`.
    pub fn substitute_generator(&self, a: &NfElem, image: &NfElem) -> NfElem {
        let mut acc = self.zero();
        let mut pow = self.one();
        for c in self.to_poly(a).coeffs() {
            acc = self.add(&acc, &self.mul(&self.embed_base(c), &pow));
            pow = self.mul(&pow, image);
        }
        acc
    }
}

/// Reduces chunk coefficients (base elements) modulo a monic modulus.
fn reduce_chunks(base: &NumberField, modulus: &[Vec<Rat>], n: usize, c: &mut Vec<Vec<Rat>>) {
    while c.len() > n {
        let top = c.pop().unwrap();
        if top.iter().all(|x| x.is_zero()) {
            continue;
        }
        let k = c.len() - n;
        for (t, m) in modulus[..n].iter().enumerate() {
            let prod = mul_flat(base, &top, m);
            for (dst, s) in c[k + t].iter_mut().zip(prod) {
                *dst -= s;
            }
        }
    }
}

fn mul_flat(field: &NumberField, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let base = match field.base() {
        None => return vec![&a[0] * &b[0]],
        Some(base) => base,
    };
    let bd = base.degree();
    let n = field.0.rel_degree;
    let a_chunks: Vec<&[Rat]> = a.chunks(bd).collect();
    let b_chunks: Vec<&[Rat]> = b.chunks(bd).collect();
    let a_nz: Vec<bool> = a_chunks
        .iter()
        .map(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let b_nz: Vec<bool> = b_chunks
        .iter()
        .map(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let mut prod: Vec<Vec<Rat>> = vec![vec![Rat::zero(); bd]; 2 * n - 1];
    for i in 0..n {
        if !a_nz[i] {
            continue;
        }
        for j in 0..n {
            if !b_nz[j] {
                continue;
            }
            let t = mul_flat(base, a_chunks[i], b_chunks[j]);
            for (dst, s) in prod[i + j].iter_mut().zip(t) {
                *dst += s;
            }
        }
    }
    reduce_chunks(base, &field.0.modulus, n, &mut prod);
    prod.into_iter().flatten().collect()
}

impl Ring for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem(vec![Rat::zero(); self.degree()])
    }
    fn one(&self) -> NfElem {
        self.from_rat(Rat::one())
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }
    fn is_one(&self, a: &NfElem) -> bool {
        a.0[0].is_one() && a.0[1..].iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem(a.0.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if let Some(q) = self.as_rational(a) {
            return NfElem(b.0.iter().map(|x| x * &q).collect());
        }
        if let Some(q) = self.as_rational(b) {
            return NfElem(a.0.iter().map(|x| x * &q).collect());
        }
        NfElem(mul_flat(self, &a.0, &b.0))
    }
    fn from_i64(&self, n: i64) -> NfElem {
        self.from_rat(Rat::from_integer(n.into()))
    }
}

impl Field for NumberField {
    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if self.is_zero(a) {
            return None;
        }
        if let Some(q) = self.as_rational(a) {
            return Some(self.from_rat(q.recip()));
        }
        let base = self.base().expect("Q handled above");
        let bd = base.degree();
        if a.0[bd..].iter().all(|c| c.is_zero()) {
            let b = base.inv(&NfElem(a.0[..bd].to_vec()))?;
            return Some(self.embed_base(&b));
        }
        let s = self.to_poly(a).inv_mod(&self.modulus())?;
        Some(self.from_poly(&s))
    }
}

/// Evaluates `h` at a rational point.
fn eval_at_rational(h: &NfPoly, x: &Rat) -> NfElem {
    let f = h.ring();
    let mut acc = f.zero();
    for c in h.coeffs().iter().rev() {
        acc = f.add(&NfElem(acc.0.iter().map(|a| a * x).collect()), c);
    }
    acc
}

/// `N_{F/Q}(h)`, a rational polynomial of degree `deg(h) [F:Q]`, by
/// evaluation at `0, 1, 2, ...` and interpolation.
pub fn norm_poly(h: &NfPoly) -> QPoly {
    let f = h.ring();
    let n = match h.degree() {
        None => return UniPoly::zero(QQ),
        Some(n) => n * f.degree(),
    };
    let xs: Vec<Rat> = (0..=n as i64)
        .map(|i| Rat::from_integer(i.into()))
        .collect();
    let ys: Vec<Rat> = xs.iter().map(|x| f.norm(&eval_at_rational(h, x))).collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> QPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UniPoly::zero(QQ);
    for i in (0..n).rev() {
        let lin = UniPoly::new(QQ, vec![-xs[i].clone(), Rat::one()]);
        acc = &(&acc * &lin) + &UniPoly::constant(QQ, dd[i].clone());
    }
    acc
}

fn cmp_nfpoly(a: &NfPoly, b: &NfPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Complete factorization over a number field into monic irreducibles with
/// multiplicities (Trager's norm method).
pub fn nf_factor(h: &NfPoly) -> Result<Vec<(NfPoly, usize)>> {
    if h.is_zero() {
        return Err(Error::Domain("factorization of the zero polynomial".into()));
    }
    let field = h.ring().clone();
    if field.is_rationals() {
        let q = h.map(QQ, |c| c.0[0].clone());
        return Ok(factor_over_rationals(&q)?
            .monic_factors()
            .into_iter()
            .map(|(g, e)| (g.map(field.clone(), |c| NfElem(vec![c.clone()])), e))
            .collect());
    }
    let mut out = Vec::new();
    for (g, e) in h.squarefree_decomposition() {
        for irr in trager(&g)? {
            out.push((irr, e));
        }
    }
    out.sort_by(|a, b| cmp_nfpoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn trager(g: &NfPoly) -> Result<Vec<NfPoly>> {
    let field = g.ring().clone();
    if g.degree() == Some(1) {
        return Ok(vec![g.monic()]);
    }
    let (alpha, _) = field.primitive_element();
    for k in shifts() {
        let ka = field.mul(&field.from_i64(k), &alpha);
        // g(x - k alpha)
        let shift = UniPoly::new(field.clone(), vec![field.neg(&ka), field.one()]);
        let gk = g.compose(&shift);
        let n = norm_poly(&gk);
        if !n.is_squarefree() {
            continue;
        }
        let fac = factor_over_rationals(&n)?;
        if fac.factors.len() == 1 {
            return Ok(vec![g.monic()]);
        }
        let back = UniPoly::new(field.clone(), vec![ka.clone(), field.one()]);
        let mut out = Vec::new();
        for (ni, _) in fac.monic_factors() {
            let lifted = ni.map(field.clone(), |c| field.from_rat(c.clone()));
            let hi = gk.gcd(&lifted);
            if hi.degree().unwrap_or(0) > 0 {
                out.push(hi.compose(&back).monic());
            }
        }
        return Ok(out);
    }
    unreachable!()
}

fn shifts() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
}

/// Roots of `h` in its coefficient field, sorted by coordinates.
pub fn nf_roots(h: &NfPoly) -> Result<Vec<NfElem>> {
    let f = h.ring().clone();
    let mut roots: Vec<NfElem> = nf_factor(h)?
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| f.neg(&g.coeff(0)))
        .collect();
    roots.sort();
    Ok(roots)
}

/// A square root of `a` in `F`, if one exists.
pub fn nf_sqrt(field: &NumberField, a: &NfElem) -> Result<Option<NfElem>> {
    if field.is_zero(a) {
        return Ok(Some(field.zero()));
    }
    let x2 = UniPoly::new(field.clone(), vec![field.neg(a), field.zero(), field.one()]);
    Ok(nf_roots(&x2)?.into_iter().next())
}
