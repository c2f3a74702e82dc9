//! Finite fields `GF(p^m)` as `F_p[t] / (g(t))`.

use num_bigint::BigUint;

use crate::factor::{factor_finite, is_irreducible_mod_p};
use crate::poly::UniPoly;
use crate::ring::{Field, FiniteField, PrimeField, Ring};
use crate::FpPoly;

/// Elements are coefficient vectors of length `m` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    fp: PrimeField,
    modulus: Vec<u64>,
    m: usize,
}

impl GaloisField {
    /// `GF(p^m)` with the first monic irreducible of degree `m` in
    /// ascending coefficient order.
    pub fn new(p: u64, m: usize) -> Self {
        assert!(m >= 1);
        let fp = PrimeField::new(p);
        if m == 1 {
            return GaloisField {
                fp,
                modulus: vec![0, 1],
                m,
            };
        }
        let mut index = 0u64;
        loop {
            let mut coeffs = Vec::with_capacity(m + 1);
            let mut k = index;
            for _ in 0..m {
                coeffs.push(k % p);
                k /= p;
            }
            coeffs.push(1);
            let g = UniPoly::new(fp, coeffs.clone());
            if is_irreducible_mod_p(&g) {
                return GaloisField {
                    fp,
                    modulus: coeffs,
                    m,
                };
            }
            index += 1;
        }
    }

    /// `F_p[t] / (g)` for a given monic irreducible `g`.
    pub fn with_modulus(g: &FpPoly) -> Self {
        assert!(g.is_monic() && is_irreducible_mod_p(g));
        GaloisField {
            fp: *g.ring(),
            modulus: g.coeffs().to_vec(),
            m: g.degree().unwrap(),
        }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus_poly(&self) -> FpPoly {
        UniPoly::new(self.fp, self.modulus.clone())
    }

    pub fn from_prime(&self, a: u64) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = a % self.fp.modulus();
        v
    }

    /// The class of `t`.
    pub fn generator(&self) -> Vec<u64> {
        if self.m == 1 {
            return self.from_prime(0);
        }
        let mut v = vec![0; self.m];
        v[1] = 1;
        v
    }

    pub fn from_poly(&self, f: &FpPoly) -> Vec<u64> {
        let r = f.rem(&self.modulus_poly());
        let mut v = r.coeffs().to_vec();
        v.resize(self.m, 0);
        v
    }

    pub fn to_poly(&self, a: &[u64]) -> FpPoly {
        UniPoly::new(self.fp, a.to_vec())
    }

    /// Element of `F_p` if `a` lies in the prime field.
    pub fn as_prime(&self, a: &[u64]) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// Embeds an `F_p` polynomial coefficientwise.
    pub fn lift_poly(&self, f: &FpPoly) -> UniPoly<GaloisField> {
        f.map(self.clone(), |c| self.from_prime(*c))
    }

    /// Roots of `f` in this field, sorted.
    pub fn roots(&self, f: &UniPoly<GaloisField>) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = match factor_finite(f) {
            Ok(fac) => fac
                .factors
                .iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .map(|(g, _)| self.neg(&g.coeff(0)))
                .collect(),
            Err(_) => Vec::new(),
        };
        out.sort();
        out
    }
}

impl Ring for GaloisField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.m]
    }
    fn one(&self) -> Vec<u64> {
        self.from_prime(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.fp.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.fp.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.fp.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.m;
        let p = self.fp.modulus() as u128;
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (t, &g) in self.modulus[..m].iter().enumerate() {
                prod[k - m + t] = (prod[k - m + t] + (p - g as u128) * c) % p;
            }
        }
        prod[..m].iter().map(|&c| c as u64).collect()
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.from_prime(self.fp.from_i64(n))
    }
}

impl Field for GaloisField {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        if self.m == 1 {
            return self.fp.inv(&a[0]).map(|x| vec![x]);
        }
        let s = self.to_poly(a).inv_mod(&self.modulus_poly())?;
        Some(self.from_poly(&s))
    }
}

impl FiniteField for GaloisField {
    fn characteristic(&self) -> u64 {
        self.fp.modulus()
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.fp.modulus()).pow(self.m as u32)
    }
    fn element(&self, mut index: u64) -> Vec<u64> {
        let p = self.fp.modulus();
        let mut v = vec![0; self.m];
        for c in v.iter_mut() {
            *c = index % p;
            index /= p;
        }
        v
    }
    fn basis(&self) -> Vec<Vec<u64>> {
        (0..self.m)
            .map(|i| {
                let mut v = vec![0; self.m];
                v[i] = 1;
                v
            })
            .collect()
    }
    fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        self.pow(a, self.fp.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        let k = GaloisField::new(3, 2);
        let all: Vec<Vec<u64>> = (0..9).map(|i| k.element(i)).collect();
        for a in &all[1..] {
            let ai = k.inv(a).unwrap();
            assert_eq!(k.mul(a, &ai), k.one());
        }
        // Frobenius has order m.
        let t = k.generator();
        assert_eq!(k.frobenius(&k.frobenius(&t)), t);
        assert_ne!(k.frobenius(&t), t);
    }

    #[test]
    fn roots_of_cubic_in_cubic_extension() {
        // x^3 - x - 1 is irreducible mod 2 and splits in GF(8).
        let k = GaloisField::new(2, 3);
        let f = k.lift_poly(&UniPoly::new(PrimeField::new(2), vec![1, 1, 0, 1]));
        let roots = k.roots(&f);
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(k.is_zero(&f.eval(r)));
        }
    }
}
