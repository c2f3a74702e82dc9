//! Coefficient domains.
//!
//! Every algebraic routine in the crate is written against [`Ring`] / [`Field`],
//! which are *structure objects*: the value carries whatever context the
//! elements need (a modulus, a defining polynomial), and elements are plain
//! data. Scalar types from `num-traits` plug in through [`Scalars`].

use std::fmt::Debug;
use std::marker::PhantomData;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub trait Field: Ring {
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// Finite fields that can enumerate their elements in a canonical order.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    fn order(&self) -> BigUint;
    /// The `i`-th element in canonical order, `0 <= i < order`.
    fn element(&self, index: u64) -> Self::Elem;
    /// A basis over the prime field.
    fn basis(&self) -> Vec<Self::Elem>;
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }
}

/// Ring of a `num-traits` scalar type.
pub struct Scalars<T>(PhantomData<T>);

impl<T> Scalars<T> {
    pub const fn new() -> Self {
        Scalars(PhantomData)
    }
}

impl<T> Default for Scalars<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Scalars<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Scalars<T> {}

impl<T> Debug for Scalars<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Scalars<{}>", std::any::type_name::<T>())
    }
}

impl<T: Num + Clone + Debug> Ring for Scalars<T> {
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn neg(&self, a: &T) -> T {
        T::zero() - a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn from_i64(&self, n: i64) -> T {
        // Num has no lossless i64 conversion; build by doubling.
        let mut acc = T::zero();
        let mut bit = T::one();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + bit.clone();
            }
            bit = bit.clone() + bit;
            m >>= 1;
        }
        if n < 0 {
            T::zero() - acc
        } else {
            acc
        }
    }
}

/// Scalar types that form a field.
pub trait FieldScalar: Num + Clone + Debug {
    fn recip(&self) -> Self;
}

impl FieldScalar for f32 {
    fn recip(&self) -> Self {
        1.0 / self
    }
}

impl FieldScalar for f64 {
    fn recip(&self) -> Self {
        1.0 / self
    }
}

impl<T: Clone + Integer + Debug> FieldScalar for Ratio<T> {
    fn recip(&self) -> Self {
        Ratio::recip(self)
    }
}

impl<T: FieldScalar> Field for Scalars<T> {
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Prime field `F_p` for word-sized `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Caller guarantees `p` is prime; see [`crate::arith::is_prime`].
    pub fn new(p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Reduces a rational whose denominator is prime to `p`.
    pub fn reduce_rat(&self, q: &Ratio<BigInt>) -> Option<u64> {
        let den = self.reduce_int(q.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.reduce_int(q.numer()), &inv))
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            return None;
        }
        let (g, x, _) = ext_gcd_i128(*a as i128, self.p as i128);
        debug_assert_eq!(g, 1);
        Some(x.rem_euclid(self.p as i128) as u64)
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    fn basis(&self) -> Vec<u64> {
        vec![1]
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

/// `Z / mZ` for arbitrary `m`, residues in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    m: BigInt,
}

impl IntegersMod {
    pub fn new(m: BigInt) -> Self {
        assert!(m.is_positive());
        IntegersMod { m }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.m
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.m)
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn symmetric(&self, a: &BigInt) -> BigInt {
        let r = self.reduce(a);
        if &r * 2 > self.m {
            r - &self.m
        } else {
            r
        }
    }
}

impl Ring for IntegersMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(&BigInt::one())
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        self.reduce(a).is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn from_i64(&self, n: i64) -> BigInt {
        self.reduce(&BigInt::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(13);
        for a in 1..13 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn scalar_from_i64() {
        let z = Scalars::<BigInt>::new();
        assert_eq!(z.from_i64(-37), BigInt::from(-37));
        let r = Scalars::<f64>::new();
        assert_eq!(r.from_i64(12), 12.0);
    }

    #[test]
    fn pow_big_matches_pow() {
        let f = PrimeField::new(101);
        assert_eq!(f.pow_big(&7, &BigUint::from(1234u32)), f.pow(&7, 1234));
    }
}
