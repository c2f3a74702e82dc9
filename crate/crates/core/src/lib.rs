//! Exact arithmetic toolkit for deciding Brauer-Manin obstructions on
//! norm-form cubic surfaces over the rationals.
//!
//! The surfaces have the shape
//!
//! ```text
//! (x + φ0 z + ψ0 w)(x + φ1 z + ψ1 w)(x + φ2 z + ψ2 w) = d y (x + θ y)(x + θ̄ y)
//! ```
//!
//! where the `φi` are the roots of a non-abelian cubic, `ψi` a polynomial in
//! `φi`, and `θ` generates the quadratic subfield of the Galois closure.
//!
//! Layering, bottom up: [`ring`] and [`poly`] give generic coefficient domains
//! and univariate polynomials; [`factor`] factors over `F_p` and `Q`;
//! [`nf`], [`ideal`] and [`tower`] handle number fields and primes;
//! [`surface`] computes the 27 lines and the Brauer class; [`local`] checks
//! local solubility and sums local invariants; [`record`] is the text format.

pub mod arith;
pub mod error;
pub mod factor;
pub mod form;
pub mod gf;
pub mod ideal;
pub mod local;
pub mod nf;
pub mod poly;
pub mod record;
pub mod ring;
pub mod surface;
pub mod tower;

pub use error::{Error, Result};
pub use gf::GaloisField;
pub use nf::{NfElem, NumberField};
pub use poly::UniPoly;
pub use ring::{Field, FiniteField, PrimeField, Ring, Scalars};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// The integers.
pub type ZZ = Scalars<Int>;
/// The rationals.
pub type QQ = Scalars<Rat>;
/// Double precision reals, used only for diagnostics.
pub type RR = Scalars<f64>;

pub type ZPoly = UniPoly<ZZ>;
pub type QPoly = UniPoly<QQ>;
pub type FpPoly = UniPoly<PrimeField>;
pub type GfPoly = UniPoly<GaloisField>;
pub type NfPoly = UniPoly<NumberField>;

pub const ZZ: ZZ = Scalars::new();
pub const QQ: QQ = Scalars::new();

/// `n / d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Rational polynomial from integer coefficients, constant term first.
pub fn qpoly(coeffs: &[i64]) -> QPoly {
    UniPoly::new(QQ, coeffs.iter().map(|&c| rat(c, 1)).collect())
}

/// Integer polynomial, constant term first.
pub fn zpoly(coeffs: &[i64]) -> ZPoly {
    UniPoly::new(ZZ, coeffs.iter().map(|&c| int(c)).collect())
}
