//! Homogeneous forms in the four variables `x, y, z, w`.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::Ring;

pub type Monomial = [u32; 4];

/// Sparse polynomial in `x, y, z, w` over a ring.
#[derive(Clone)]
pub struct Form<R: Ring> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for Form<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<R: Ring> Form<R> {
    pub fn zero(ring: R) -> Self {
        Form {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        let mut f = Form::zero(ring);
        f.add_term([0; 4], c);
        f
    }

    pub fn var(ring: R, i: usize) -> Self {
        let mut m = [0; 4];
        m[i] = 1;
        let one = ring.one();
        let mut f = Form::zero(ring);
        f.add_term(m, one);
        f
    }

    /// `c0 x + c1 y + c2 z + c3 w`.
    pub fn linear(ring: R, c: &[R::Elem]) -> Self {
        let mut f = Form::zero(ring);
        for (i, ci) in c.iter().enumerate() {
            let mut m = [0; 4];
            m[i] = 1;
            f.add_term(m, ci.clone());
        }
        f
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        let r = &self.ring;
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = r.add(v, &c);
                if r.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(self.ring.clone(), |c| self.ring.neg(c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Form::zero(self.ring.clone());
        for (m, a) in &self.terms {
            out.add_term(*m, self.ring.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Form::zero(self.ring.clone());
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                out.add_term(m, self.ring.mul(a, b));
            }
        }
        out
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Form<S> {
        let mut out = Form::zero(ring);
        for (m, c) in &self.terms {
            let v = f(c);
            out.add_term(*m, v);
        }
        out
    }

    pub fn eval(&self, point: &[R::Elem]) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = r.mul(&t, &r.pow(&point[i], e as u64));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Form::zero(self.ring.clone());
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[i] -= 1;
            out.add_term(m2, self.ring.mul(c, &self.ring.from_i64(m[i] as i64)));
        }
        out
    }

    /// Replaces each variable by the corresponding form.
    pub fn substitute(&self, images: &[Form<R>]) -> Self {
        let mut out = Form::zero(self.ring.clone());
        let mut cache: Vec<Vec<Form<R>>> = images
            .iter()
            .map(|g| {
                vec![
                    Form::constant(self.ring.clone(), self.ring.one()),
                    g.clone(),
                ]
            })
            .collect();
        for (m, c) in &self.terms {
            let mut t = Form::constant(self.ring.clone(), c.clone());
            for (i, &e) in m.iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Coefficients of `F(s·P + t·Q)` for a form of degree `n`, listed as
    /// `s^n, s^(n-1) t, ..., t^n`.
    pub fn binary_coeffs(&self, p: &[R::Elem], q: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let n = self.degree().unwrap_or(0) as usize;
        let mut out = vec![r.zero(); n + 1];
        for (m, c) in &self.terms {
            let mut poly = vec![c.clone()];
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![r.zero(); poly.len() + 1];
                    for (k, a) in poly.iter().enumerate() {
                        next[k] = r.add(&next[k], &r.mul(a, &p[i]));
                        next[k + 1] = r.add(&next[k + 1], &r.mul(a, &q[i]));
                    }
                    poly = next;
                }
            }
            for (k, a) in poly.into_iter().enumerate() {
                out[k] = r.add(&out[k], &a);
            }
        }
        out
    }

    /// The binary form `F(s·P + t·Q)` in the variables `x = s`, `y = t`.
    pub fn restrict_to_line(&self, p: &[R::Elem], q: &[R::Elem]) -> Self {
        let r = &self.ring;
        let images: Vec<Form<R>> = (0..4)
            .map(|i| {
                let mut c = vec![r.zero(); 4];
                c[0] = p[i].clone();
                c[1] = q[i].clone();
                Form::linear(r.clone(), &c)
            })
            .collect();
        self.substitute(&images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;
    use crate::{int, QQ, ZZ};

    #[test]
    fn expand_and_differentiate() {
        let x = Form::var(ZZ, 0);
        let y = Form::var(ZZ, 1);
        let f = x.add(&y).mul(&x.sub(&y));
        assert_eq!(f.coeff(&[2, 0, 0, 0]), int(1));
        assert_eq!(f.coeff(&[1, 1, 0, 0]), int(0));
        assert_eq!(f.partial(1), y.scale(&int(-2)));
        assert_eq!(f.eval(&[int(3), int(2), int(0), int(0)]), int(5));
    }

    #[test]
    fn line_restriction() {
        // x*w - y*z contains the line x = y = 0.
        let r = PrimeField::new(7);
        let f = Form::var(r, 0)
            .mul(&Form::var(r, 3))
            .sub(&Form::var(r, 1).mul(&Form::var(r, 2)));
        assert!(f.restrict_to_line(&[0, 0, 1, 0], &[0, 0, 0, 1]).is_zero());
        assert!(!f.restrict_to_line(&[1, 0, 0, 0], &[0, 0, 0, 1]).is_zero());
        assert_eq!(f.binary_coeffs(&[1, 0, 0, 0], &[0, 0, 0, 1]), vec![0, 1, 0]);
        let g = Form::linear(
            QQ,
            &[
                crate::rat(1, 2),
                crate::rat(0, 1),
                crate::rat(0, 1),
                crate::rat(0, 1),
            ],
        );
        assert_eq!(g.degree(), Some(1));
    }
}
