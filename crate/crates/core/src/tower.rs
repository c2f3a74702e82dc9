//! The tower `Q ⊂ K0, K ⊂ L` attached to a non-abelian cubic.
//!
//! `K0 = Q[x]/(f)`, `K = Q(sqrt(Δ_sf))` and `L = K[y]/(f)`, so that `L` is
//! the Galois closure of `K0`, stored relative to `K`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_square_rat, squarefree_part, valuation_rat};
use crate::error::{Error, Result};
use crate::factor::{factor_mod_p, is_irreducible_q, reduce_mod_p};
use crate::gf::GaloisField;
use crate::ideal::{quadratic_generator_poly, split_prime, PrimeIdeal};
use crate::nf::{NfElem, NumberField};
use crate::poly::UniPoly;
use crate::ring::{Field, PrimeField, Ring};
use crate::{Int, QPoly, Rat};

/// Splitting of a rational prime in `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingType {
    SplitsCompletely,
    /// `pO_L = P1 P2` with both primes of residue degree 3.
    TwoPrimesInert,
    Other {
        e: usize,
        f: usize,
        g: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unramified {
    Yes,
    Unknown,
}

/// Behaviour of a prime of `K` in the cyclic cubic extension `L/K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeBehaviour {
    Split,
    Inert,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub f: QPoly,
    pub disc: Rat,
    pub disc_sf: Int,
    /// `Δ = m^2 Δ_sf` with `m > 0`.
    pub m: Rat,
    pub k0: NumberField,
    pub k: NumberField,
    pub l: NumberField,
    /// `sqrt(Δ_sf)` in `K`.
    pub s: NfElem,
    pub phi: [NfElem; 3],
    pub psi: [NfElem; 3],
    pub psi_rule: QPoly,
    pub theta: NfElem,
    pub theta_bar: NfElem,
    pub theta_poly: QPoly,
    pub gamma: NfElem,
    pub gamma_poly: QPoly,
}

fn tower_error(msg: impl Into<String>) -> Error {
    Error::Tower(msg.into())
}

/// Rational square root, if it exists.
fn sqrt_rat(q: &Rat) -> Option<Rat> {
    if !is_square_rat(q) {
        return None;
    }
    Some(Rat::new(q.numer().sqrt(), q.denom().sqrt()))
}

pub fn build_tower(f: &QPoly, theta_poly: &QPoly, psi_rule: &QPoly) -> Result<Tower> {
    if f.degree() != Some(3) {
        return Err(tower_error("cubic must have degree 3"));
    }
    let f = f.monic();
    if !is_irreducible_q(&f)? {
        return Err(tower_error(format!(
            "{} fails the irreducibility check over Q",
            f
        )));
    }
    let disc = f.discriminant()?;
    if is_square_rat(&disc) {
        return Err(tower_error(format!(
            "discriminant {} is a square, so the cubic field is abelian",
            disc
        )));
    }
    if theta_poly.degree() != Some(2) {
        return Err(tower_error("theta polynomial must be quadratic"));
    }
    let theta_poly = theta_poly.monic();
    if !is_irreducible_q(&theta_poly)? {
        return Err(tower_error(format!(
            "{} fails the irreducibility check over Q",
            theta_poly
        )));
    }
    if psi_rule.deg() > 2 {
        return Err(tower_error("psi rule must have degree at most 2"));
    }

    let disc_sf = squarefree_part(&(disc.numer() * disc.denom()))?;
    let m = sqrt_rat(&(&disc / Rat::from_integer(disc_sf.clone()))).expect("square cofactor");

    let k = NumberField::from_rational_poly(&quadratic_generator_poly(&disc_sf), "K")?;
    let w = k.generator();
    let s = if disc_sf.mod_floor(&Int::from(4)) == Int::one() {
        k.sub(&k.mul(&k.from_i64(2), &w), &k.one())
    } else {
        w
    };

    let tdisc = theta_poly.discriminant()?;
    let r = sqrt_rat(&(&tdisc / Rat::from_integer(disc_sf.clone()))).ok_or_else(|| {
        tower_error(format!(
            "theta discriminant {} and cubic discriminant {} lie in different square classes",
            tdisc, disc
        ))
    })?;
    let t = -theta_poly.coeff(1);
    let half = Rat::new(Int::one(), Int::from(2));
    let rs = k.mul(&k.from_rat(r.clone()), &s);
    let plus = k.mul(
        &k.from_rat(half.clone()),
        &k.add(&k.from_rat(t.clone()), &rs),
    );
    let minus = k.mul(&k.from_rat(half.clone()), &k.sub(&k.from_rat(t), &rs));
    let (theta, theta_bar) = if plus <= minus {
        (plus, minus)
    } else {
        (minus, plus)
    };

    let k0 = NumberField::from_rational_poly(&f, "K0")?;
    let reduced = psi_rule.rem(&f);
    if reduced.coeff(2).is_zero() {
        return Err(tower_error("1, phi, psi are linearly dependent"));
    }

    let fk = f.map(k.clone(), |c| k.from_rat(c.clone()));
    let l = NumberField::extension_unchecked(&k, &fk, "L");
    let y = l.generator();
    let fl = f.map(l.clone(), |c| l.from_rat(c.clone()));
    let dfy = fl.derivative().eval(&y);
    let dinv = l
        .inv(&dfy)
        .ok_or_else(|| tower_error("cubic is not separable"))?;
    let root_term = l.mul(&l.mul(&l.from_rat(m.clone()), &l.embed_base(&s)), &dinv);
    let base = l.sub(&l.from_rat(-f.coeff(2)), &y);
    let halfl = l.from_rat(half);
    let phi1 = l.mul(&halfl, &l.add(&base, &root_term));
    let phi2 = l.mul(&halfl, &l.sub(&base, &root_term));
    let phi = [y, phi1, phi2];
    for p in &phi {
        if !l.is_zero(&fl.eval(p)) {
            return Err(tower_error("conjugate formula produced a non-root"));
        }
    }
    let psil = psi_rule.map(l.clone(), |c| l.from_rat(c.clone()));
    let psi = [psil.eval(&phi[0]), psil.eval(&phi[1]), psil.eval(&phi[2])];

    let sl = l.embed_base(&s);
    let mut c = 1i64;
    let (gamma, gamma_poly) = loop {
        let g = l.add(&phi[0], &l.mul(&l.from_i64(c), &sl));
        let cp = l.charpoly(&g);
        if cp.is_squarefree() {
            break (g, cp);
        }
        c += 1;
    };

    Ok(Tower {
        f,
        disc,
        disc_sf,
        m,
        k0,
        k,
        l,
        s,
        phi,
        psi,
        psi_rule: psi_rule.clone(),
        theta,
        theta_bar,
        theta_poly,
        gamma,
        gamma_poly,
    })
}

impl Tower {
    /// Same tower with the roles of θ and θ̄ exchanged.
    pub fn swap_theta(&self) -> Tower {
        let mut t = self.clone();
        std::mem::swap(&mut t.theta, &mut t.theta_bar);
        t
    }

    /// Same fields with a different θ ∈ K \ Q.
    pub fn with_theta(&self, theta: &NfElem) -> Result<Tower> {
        let k = &self.k;
        if k.as_rational(theta).is_some() {
            return Err(tower_error("theta must not be rational"));
        }
        let mut t = self.clone();
        t.theta = theta.clone();
        t.theta_bar = self.conj(theta);
        t.theta_poly = k.minpoly(theta);
        Ok(t)
    }

    /// Nontrivial automorphism of `K`.
    pub fn conj(&self, a: &NfElem) -> NfElem {
        let k = &self.k;
        let w = k.generator();
        let image = if self.s == w {
            k.neg(&w)
        } else {
            k.sub(&k.one(), &w)
        };
        k.substitute_generator(a, &image)
    }

    /// `K`-automorphism of `L` with `φ0 ↦ φ1`.
    pub fn sigma(&self, a: &NfElem) -> NfElem {
        self.l.substitute_generator(a, &self.phi[1])
    }

    pub fn k_to_l(&self, a: &NfElem) -> NfElem {
        self.l.embed_base(a)
    }

    /// `ε_i(a)` for `a ∈ K0`.
    pub fn embed_k0(&self, a: &NfElem, i: usize) -> NfElem {
        let l = &self.l;
        let mut acc = l.zero();
        let mut pow = l.one();
        for c in &a.0 {
            acc = l.add(&acc, &l.mul(&l.from_rat(c.clone()), &pow));
            pow = l.mul(&pow, &self.phi[i]);
        }
        acc
    }

    pub fn theta_trace(&self) -> Rat {
        -self.theta_poly.coeff(1)
    }

    pub fn theta_norm(&self) -> Rat {
        self.theta_poly.coeff(0)
    }

    pub fn is_unramified(&self) -> Unramified {
        let integral = self.f.coeffs().iter().all(|c| c.is_integer());
        if integral && self.m.is_one() {
            Unramified::Yes
        } else {
            Unramified::Unknown
        }
    }

    fn check_good(&self, p: u64) -> Result<()> {
        let bp = Int::from(p);
        if self.f.coeffs().iter().any(|c| (c.denom() % &bp).is_zero()) {
            return Err(Error::UnsupportedPrime(p));
        }
        if valuation_rat(&self.m, p) != 0 {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(())
    }

    pub fn primes_of_k(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        split_prime(p, &self.k)
    }

    pub fn splitting_type_in_l(&self, p: u64) -> Result<SplittingType> {
        if (&self.disc_sf % Int::from(p)).is_zero() {
            return Err(Error::RamifiedPrime(p));
        }
        self.check_good(p)?;
        let k_split = self.primes_of_k(p)?.len() == 2;
        let degrees = factor_mod_p(&self.f, p)?.degrees();
        Ok(match (k_split, degrees.as_slice()) {
            (true, [3]) => SplittingType::TwoPrimesInert,
            (true, [1, 1, 1]) => SplittingType::SplitsCompletely,
            (true, _) => return Err(Error::UnsupportedPrime(p)),
            (false, _) => SplittingType::Other { e: 1, f: 2, g: 3 },
        })
    }

    /// Splitting of a prime of `K` in `L`.
    pub fn behaviour_in_l(&self, prime: &PrimeIdeal) -> Result<PrimeBehaviour> {
        let p = prime.p;
        if prime.e > 1 {
            return match self.is_unramified() {
                Unramified::Yes => Ok(PrimeBehaviour::Split),
                Unramified::Unknown => Err(Error::RamifiedPrime(p)),
            };
        }
        match self.splitting_type_in_l(p)? {
            SplittingType::TwoPrimesInert => Ok(PrimeBehaviour::Inert),
            _ => Ok(PrimeBehaviour::Split),
        }
    }

    /// Root of the defining polynomial of `K` modulo a degree-one prime.
    pub fn residue_root(&self, prime: &PrimeIdeal) -> Option<u64> {
        let h = &prime.residue_factor;
        if h.degree() != Some(1) {
            return None;
        }
        let fp = PrimeField::new(prime.p);
        Some(fp.neg(&h.coeff(0)))
    }

    /// The exponent `j ∈ {1, 2}` with `Frob_P = σ^j`, for a degree-one prime
    /// `P` of `K` that is inert in `L`.
    pub fn frobenius_j(&self, prime: &PrimeIdeal) -> Result<u32> {
        let p = prime.p;
        if self.behaviour_in_l(prime)? != PrimeBehaviour::Inert {
            return Err(Error::Argument(format!(
                "{} is not inert in L",
                prime.describe()
            )));
        }
        let r = self.residue_root(prime).ok_or(Error::UnsupportedPrime(p))?;
        let fp = PrimeField::new(p);
        let fbar = reduce_mod_p(&self.f, fp).ok_or(Error::UnsupportedPrime(p))?;
        let gf = GaloisField::with_modulus(&fbar);
        let rho = |a: &NfElem| -> Result<Vec<u64>> {
            let mut coeffs = Vec::with_capacity(3);
            for chunk in a.0.chunks(2) {
                let c0 = fp.reduce_rat(&chunk[0]).ok_or(Error::UnsupportedPrime(p))?;
                let c1 = fp.reduce_rat(&chunk[1]).ok_or(Error::UnsupportedPrime(p))?;
                coeffs.push(fp.add(&c0, &fp.mul(&c1, &r)));
            }
            Ok(gf.from_poly(&UniPoly::new(fp, coeffs)))
        };
        let frob = gf.pow(&gf.generator(), p);
        if frob == rho(&self.phi[1])? {
            Ok(1)
        } else if frob == rho(&self.phi[2])? {
            Ok(2)
        } else {
            Err(Error::Domain("Frobenius does not match a conjugate".into()))
        }
    }

    /// Determinant of the coordinates of `1, φ, ψ` in `K0`.
    pub fn basis_determinant(&self) -> Rat {
        self.psi_rule.rem(&self.f).coeff(2)
    }

    pub fn theta_l(&self) -> NfElem {
        self.k_to_l(&self.theta)
    }

    pub fn theta_bar_l(&self) -> NfElem {
        self.k_to_l(&self.theta_bar)
    }

    pub fn k_description(&self) -> String {
        let sign = if self.disc_sf.is_negative() { "-" } else { "" };
        format!("Q(sqrt({}{}))", sign, self.disc_sf.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qpoly, rat};

    pub(crate) fn ex1() -> Tower {
        build_tower(
            &qpoly(&[-1, -1, 0, 1]),
            &qpoly(&[48, 13, 1]),
            &qpoly(&[0, 0, 1]),
        )
        .unwrap()
    }

    pub(crate) fn ex2() -> Tower {
        build_tower(
            &qpoly(&[1, 1, 0, 1]),
            &qpoly(&[35, -4, 1]),
            &qpoly(&[0, 0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn example_towers() {
        let t = ex1();
        assert_eq!(t.disc, rat(-23, 1));
        assert_eq!(t.l.degree(), 6);
        assert_eq!(t.gamma_poly.degree(), Some(6));
        let k = &t.k;
        assert_eq!(k.mul(&t.theta, &t.theta_bar), k.from_i64(48));
        assert_eq!(k.add(&t.theta, &t.theta_bar), k.from_i64(-13));
        let l = &t.l;
        let sum = l.add(&l.add(&t.phi[0], &t.phi[1]), &t.phi[2]);
        assert_eq!(sum, l.zero());
        let prod = l.mul(&l.mul(&t.phi[0], &t.phi[1]), &t.phi[2]);
        assert_eq!(prod, l.one());
        assert_ne!(t.phi[1], t.phi[2]);
        assert_eq!(t.is_unramified(), Unramified::Yes);

        let t = ex2();
        assert_eq!(t.disc, rat(-31, 1));
        assert_eq!(t.k.mul(&t.theta, &t.theta_bar), t.k.from_i64(35));
    }

    #[test]
    fn sigma_has_order_three() {
        let t = ex1();
        let y = t.phi[0].clone();
        assert_eq!(t.sigma(&y), t.phi[1]);
        assert_eq!(t.sigma(&t.phi[1]), t.phi[2]);
        assert_eq!(t.sigma(&t.phi[2]), y);
        let th = t.theta_l();
        assert_eq!(t.sigma(&th), th);
    }

    #[test]
    fn rejected_towers() {
        let e = build_tower(
            &qpoly(&[-1, -3, 0, 1]),
            &qpoly(&[48, 13, 1]),
            &qpoly(&[0, 0, 1]),
        );
        assert!(matches!(e, Err(Error::Tower(_))));
        // x^2 + 1 lives in Q(i), not Q(sqrt(-23)).
        let e = build_tower(
            &qpoly(&[-1, -1, 0, 1]),
            &qpoly(&[1, 0, 1]),
            &qpoly(&[0, 0, 1]),
        );
        assert!(matches!(e, Err(Error::Tower(_))));
        let e = build_tower(
            &qpoly(&[0, -1, 0, 1]),
            &qpoly(&[48, 13, 1]),
            &qpoly(&[0, 0, 1]),
        );
        assert!(matches!(e, Err(Error::Tower(_))));
    }

    #[test]
    fn splitting_types() {
        let t = ex2();
        assert_eq!(
            t.splitting_type_in_l(5).unwrap(),
            SplittingType::TwoPrimesInert
        );
        assert_eq!(
            t.splitting_type_in_l(7).unwrap(),
            SplittingType::TwoPrimesInert
        );
        assert_eq!(t.splitting_type_in_l(31), Err(Error::RamifiedPrime(31)));
        assert_eq!(
            ex1().splitting_type_in_l(2).unwrap(),
            SplittingType::TwoPrimesInert
        );
        // 5 is inert in Q(sqrt(-23)).
        assert_eq!(
            ex1().splitting_type_in_l(5).unwrap(),
            SplittingType::Other { e: 1, f: 2, g: 3 }
        );
    }

    #[test]
    fn frobenius_exponents() {
        let t = ex2();
        for (p, expected) in [(5u64, 1u32), (7, 2)] {
            let primes = t.primes_of_k(p).unwrap();
            let q = primes
                .iter()
                .find(|q| crate::ideal::ideal_valuation(&t.theta, q).unwrap() > 0)
                .unwrap();
            assert_eq!(t.frobenius_j(q).unwrap(), expected, "p = {}", p);
            let other = primes.iter().find(|o| *o != q).unwrap();
            assert_eq!(t.frobenius_j(other).unwrap(), 3 - expected);
        }
    }
}
