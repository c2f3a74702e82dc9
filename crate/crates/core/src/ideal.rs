//! Primes of absolute number fields via Dedekind's criterion, and exact
//! prime-adic valuations.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{is_prime, valuation};
use crate::error::{Error, Result};
use crate::factor::{factor_finite, hensel_lift, reduce_z_mod_p};
use crate::gf::GaloisField;
use crate::nf::{NfElem, NumberField};
use crate::poly::UniPoly;
use crate::ring::{PrimeField, Ring};
use crate::{FpPoly, Int, Rat, ZPoly, QQ, ZZ};

#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    field: NumberField,
    pub p: u64,
    /// Ramification index.
    pub e: usize,
    /// Residue degree.
    pub f: usize,
    /// Monic irreducible factor of the defining polynomial mod `p`.
    pub residue_factor: FpPoly,
    /// Position in the output of [`split_prime`].
    pub index: usize,
    /// All `(factor, multiplicity)` pairs mod `p`, needed to lift the local
    /// factor.
    siblings: Vec<(FpPoly, usize)>,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.p == other.p
            && self.residue_factor == other.residue_factor
    }
}

impl PrimeIdeal {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// `(p, h(gen))` written out.
    pub fn describe(&self) -> String {
        format!("({}, {})", self.p, poly_text(&self.residue_factor))
    }

    /// Image of a `P`-integral element whose denominator is prime to `p` in
    /// the residue field `F_p[t] / (h)`.
    pub fn residue(&self, a: &NfElem) -> Option<Vec<u64>> {
        let fp = PrimeField::new(self.p);
        let coeffs =
            a.0.iter()
                .map(|c| fp.reduce_rat(c))
                .collect::<Option<Vec<u64>>>()?;
        let k = self.residue_field();
        Some(k.from_poly(&UniPoly::new(fp, coeffs)))
    }

    pub fn residue_field(&self) -> GaloisField {
        GaloisField::with_modulus(&self.residue_factor)
    }
}

fn poly_text(h: &FpPoly) -> String {
    let z = h.map(ZZ, |c| Int::from(*c));
    z.to_string()
}

fn integral_modulus(field: &NumberField) -> Result<ZPoly> {
    let g = field
        .rational_modulus()
        .ok_or_else(|| Error::Argument("prime splitting needs a simple extension of Q".into()))?;
    if g.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::Argument(
            "defining polynomial must have integer coefficients".into(),
        ));
    }
    Ok(g.map(ZZ, |c| c.to_integer()))
}

fn lift_fp(h: &FpPoly) -> ZPoly {
    h.map(ZZ, |c| Int::from(*c))
}

/// Dedekind's criterion: `Z[x]/(g)` is maximal at `p`.
pub fn dedekind_criterion(g: &ZPoly, p: u64) -> bool {
    let fp = PrimeField::new(p);
    let gp = reduce_z_mod_p(g, fp);
    let fac = factor_finite(&gp).expect("nonzero");
    let mut rad = UniPoly::one(fp);
    let mut rest = UniPoly::one(fp);
    let mut full = UniPoly::one(ZZ);
    for (h, e) in &fac.factors {
        rad = &rad * h;
        if *e > 1 {
            rest = &rest * &h.pow(*e as u32 - 1);
        }
        full = &full * &lift_fp(h).pow(*e as u32);
    }
    let unit = Int::from(fac.unit);
    let diff = g - &full.scale(&unit);
    let bp = Int::from(p);
    let quotient = diff.map(ZZ, |c| {
        debug_assert!((c % &bp).is_zero());
        c / &bp
    });
    let fbar = reduce_z_mod_p(&quotient, fp);
    let t = fbar.gcd(&rad).gcd(&rest);
    t.degree() == Some(0)
}

/// Primes above `p` in a simple extension `Q[x]/(g)` with monic integral `g`.
pub fn split_prime(p: u64, field: &NumberField) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{} is not prime", p)));
    }
    let g = integral_modulus(field)?;
    if !g.lc().is_one() {
        return Err(Error::Argument("defining polynomial must be monic".into()));
    }
    let disc = g.discriminant_z()?;
    let p2 = Int::from(p * p);
    if (&disc % &p2).is_zero() && !dedekind_criterion(&g, p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let fp = PrimeField::new(p);
    let fac = factor_finite(&reduce_z_mod_p(&g, fp))?;
    let siblings = fac.factors.clone();
    Ok(fac
        .factors
        .iter()
        .enumerate()
        .map(|(index, (h, e))| PrimeIdeal {
            field: field.clone(),
            p,
            e: *e,
            f: h.degree().unwrap(),
            residue_factor: h.clone(),
            index,
            siblings: siblings.clone(),
        })
        .collect())
}

/// `v_P(a)` for nonzero `a`.
pub fn ideal_valuation(a: &NfElem, prime: &PrimeIdeal) -> Result<i64> {
    let field = &prime.field;
    if field.is_zero(a) {
        return Err(Error::Valuation);
    }
    let p = prime.p;
    let g = integral_modulus(field)?;
    let mut den = Int::one();
    for c in &a.0 {
        den = den.lcm(c.denom());
    }
    let scaled: ZPoly = UniPoly::new(
        ZZ,
        a.0.iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect(),
    );
    let den_val = valuation(&den, p) as i64 * prime.e as i64;

    let powers: Vec<FpPoly> = prime
        .siblings
        .iter()
        .map(|(h, e)| h.pow(*e as u32))
        .collect();
    let mut digits = 16u32;
    loop {
        let modulus = Int::from(p).pow(digits);
        let local = hensel_lift(&g, &powers, p, &modulus);
        let gp = &local[prime.index];
        let res = gp.to_rational().resultant(&scaled.to_rational())?;
        let res = res.to_integer();
        let bound = modulus.clone();
        if !(&res % &bound).is_zero() {
            let v = valuation(&res, p) as i64;
            debug_assert_eq!(v % prime.f as i64, 0);
            return Ok(v / prime.f as i64 - den_val);
        }
        digits *= 2;
        if digits > 4096 {
            return Err(Error::Domain("valuation precision exhausted".into()));
        }
    }
}

/// `v_p` of a rational number as seen by a prime of any absolute field.
pub fn rational_valuation(q: &Rat, prime: &PrimeIdeal) -> i64 {
    crate::arith::valuation_rat(q, prime.p) * prime.e as i64
}

/// Splitting type of `p` in `Q(sqrt(d))` predicted by the Kronecker symbol
/// of the field discriminant: `1` split, `-1` inert, `0` ramified.
pub fn quadratic_symbol(d: &Int, p: u64) -> i32 {
    let disc = if d.mod_floor(&Int::from(4)) == Int::one() {
        d.clone()
    } else {
        d * 4
    };
    crate::arith::kronecker(&disc, p)
}

/// `Z`-coefficients of the quadratic order generator polynomial for a
/// squarefree `d`: `x^2 - x + (1-d)/4` or `x^2 - d`.
pub fn quadratic_generator_poly(d: &Int) -> crate::QPoly {
    if d.mod_floor(&Int::from(4)) == Int::one() {
        let c = (Int::one() - d) / 4;
        UniPoly::new(QQ, vec![Rat::from_integer(c), -Rat::one(), Rat::one()])
    } else {
        UniPoly::new(QQ, vec![Rat::from_integer(-d), Rat::zero(), Rat::one()])
    }
}

/// Sum of `e * f` over the primes, equal to the field degree.
pub fn total_degree(primes: &[PrimeIdeal]) -> usize {
    primes.iter().map(|q| q.e * q.f).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qpoly, rat};

    fn quadratic(d: i64) -> NumberField {
        NumberField::from_rational_poly(&quadratic_generator_poly(&Int::from(d)), "K").unwrap()
    }

    #[test]
    fn splitting_examples() {
        let k = quadratic(-23);
        let two = split_prime(2, &k).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|q| q.e == 1 && q.f == 1));
        let t = split_prime(23, &k).unwrap();
        assert_eq!((t.len(), t[0].e), (1, 2));

        let k0 = NumberField::from_rational_poly(&qpoly(&[-1, -1, 0, 1]), "K0").unwrap();
        let q = split_prime(2, &k0).unwrap();
        assert_eq!((q.len(), q[0].f), (1, 3));
        let k1 = NumberField::from_rational_poly(&qpoly(&[1, 1, 0, 1]), "K0").unwrap();
        let q = split_prime(5, &k1).unwrap();
        assert_eq!((q.len(), q[0].f), (1, 3));
    }

    #[test]
    fn index_divisor_rejected() {
        // Z[sqrt(-3)] is not maximal at 2.
        let k = NumberField::from_rational_poly(&qpoly(&[3, 0, 1]), "K").unwrap();
        assert_eq!(split_prime(2, &k).unwrap_err(), Error::UnsupportedPrime(2));
    }

    #[test]
    fn valuations() {
        let k = quadratic(-23);
        for q in split_prime(2, &k).unwrap() {
            assert_eq!(ideal_valuation(&k.from_i64(48), &q).unwrap(), 4);
            assert_eq!(ideal_valuation(&k.one(), &q).unwrap(), 0);
        }
        // theta = 2 + sqrt(-31) = 1 + 2 omega has norm 35.
        let k = quadratic(-31);
        let theta = NfElem(vec![rat(1, 1), rat(2, 1)]);
        assert_eq!(k.norm(&theta), rat(35, 1));
        let five = split_prime(5, &k).unwrap();
        let vals: Vec<i64> = five
            .iter()
            .map(|q| ideal_valuation(&theta, q).unwrap())
            .collect();
        let mut sorted = vals.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
        let bad = k.zero();
        assert_eq!(ideal_valuation(&bad, &five[0]), Err(Error::Valuation));
    }

    #[test]
    fn residue_images() {
        let k = quadratic(-31);
        let theta = NfElem(vec![rat(1, 1), rat(2, 1)]);
        for q in split_prime(7, &k).unwrap() {
            let r = q.residue(&theta).unwrap();
            let divides = ideal_valuation(&theta, &q).unwrap() > 0;
            assert_eq!(r == vec![0], divides);
        }
    }
}
