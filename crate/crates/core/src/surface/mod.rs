//! Surfaces in normal form, their 27 lines and Brauer class.

pub mod geometry;
pub mod lines;
pub mod modp;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::Form;
use crate::nf::NfElem;
use crate::ring::Ring;
use crate::tower::Tower;
use crate::{Int, NumberField, Rat, QQ};

pub use geometry::{Geometry, Line, LineName, TripleNine};
pub use lines::{all_lines, brauer_classify, BrauerClass, LinesReport};
pub use modp::{lines_mod_p, smoothness_scan, ModPLines, SmoothnessScan};

/// `∏(x + φi z + ψi w) = d y (x + θ y)(x + θ̄ y)`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub tower: Tower,
    pub d: Rat,
    /// Left side minus right side, with rational coefficients.
    pub equation: Form<QQ>,
}

impl NormalForm {
    pub fn new(tower: Tower, d: Rat) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Geometry("d must be nonzero".into()));
        }
        let l = &tower.l;
        let mut left = Form::constant(l.clone(), l.one());
        for i in 0..3 {
            let lin = Form::linear(
                l.clone(),
                &[
                    l.one(),
                    l.zero(),
                    tower.phi[i].clone(),
                    tower.psi[i].clone(),
                ],
            );
            left = left.mul(&lin);
        }
        let mut equation = Form::zero(QQ);
        for (m, c) in left.terms() {
            let q = l
                .as_rational(c)
                .ok_or_else(|| Error::Geometry("norm form is not defined over Q".into()))?;
            equation = equation.add(&monomial(*m, q));
        }
        let t = tower.theta_trace();
        let n = tower.theta_norm();
        let xq = Form::var(QQ, 0);
        let yq = Form::var(QQ, 1);
        let quad = xq
            .mul(&xq)
            .add(&xq.mul(&yq).scale(&t))
            .add(&yq.mul(&yq).scale(&n));
        let right = yq.mul(&quad).scale(&d);
        let equation = equation.sub(&right);
        Ok(NormalForm { tower, d, equation })
    }

    /// The same surface with the labels θ and θ̄ exchanged.
    pub fn swap_theta(&self) -> NormalForm {
        NormalForm {
            tower: self.tower.swap_theta(),
            d: self.d.clone(),
            equation: self.equation.clone(),
        }
    }

    /// The geometric data over `L`.
    pub fn geometry(&self) -> Result<Geometry<NumberField>> {
        let t = &self.tower;
        let l = t.l.clone();
        Geometry::new(
            l.clone(),
            t.phi.clone(),
            t.psi.clone(),
            t.theta_l(),
            t.theta_bar_l(),
            l.from_rat(self.d.clone()),
        )
    }

    /// The resolvent cubic of one permutation, parametrized by `C` (or `A`).
    pub fn resolvent_cubic(&self, perm: [usize; 3]) -> Result<crate::NfPoly> {
        self.geometry()?.resolvent_in_parameter(perm)
    }

    pub fn nine_lines(&self) -> Result<Vec<Line<NfElem>>> {
        Ok(self.geometry()?.nine_lines())
    }

    /// Checks that the planes `y = 0` and `x + θ y = 0` cut out exactly
    /// `L_{0,0} + L_{1,0} + L_{2,0}` and `L_{0,1} + L_{1,1} + L_{2,1}`, so that
    /// `div((x + θ y)/y)` is their difference.
    pub fn verify_plane_section(&self) -> bool {
        let t = &self.tower;
        let l = t.l.clone();
        let k = &t.k;
        let eq = self.equation.map(l.clone(), |c| l.from_rat(c.clone()));
        let var = |i| Form::var(l.clone(), i);
        let planes = |x_image: &Form<NumberField>| {
            (0..3).fold(Form::constant(l.clone(), l.one()), |acc, i| {
                let lin = x_image
                    .add(&var(2).scale(&t.phi[i]))
                    .add(&var(3).scale(&t.psi[i]));
                acc.mul(&lin)
            })
        };
        let y0 = eq.substitute(&[var(0), Form::zero(l.clone()), var(2), var(3)]);
        let x_on_plane = var(1).scale(&l.neg(&t.theta_l()));
        let on_theta = eq.substitute(&[x_on_plane.clone(), var(1), var(2), var(3)]);
        let norm_ok = k.mul(&t.theta, &t.theta_bar) == k.from_rat(t.theta_norm())
            && k.add(&t.theta, &t.theta_bar) == k.from_rat(t.theta_trace());
        norm_ok && y0 == planes(&var(0)) && on_theta == planes(&x_on_plane)
    }
}

fn monomial(m: [u32; 4], c: Rat) -> Form<QQ> {
    let mut f = Form::constant(QQ, c);
    for (i, &e) in m.iter().enumerate() {
        for _ in 0..e {
            f = f.mul(&Form::var(QQ, i));
        }
    }
    f
}

/// `m N(a x + b y + φ z + ψ w) = (c x + d y) N(x + θ' y)`.
#[derive(Clone, Debug)]
pub struct GeneralForm {
    pub m: Rat,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    /// Supplies `φ`, `ψ` and `θ'`.
    pub tower: Tower,
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub form: NormalForm,
    /// `y` was scaled by this factor to make `θ` integral and `d` an integer.
    pub kappa: Int,
    /// Values before scaling.
    pub theta_unscaled: NfElem,
    pub d_unscaled: Rat,
}

pub fn normalize(g: &GeneralForm) -> Result<Normalized> {
    let t = &g.tower;
    let k = &t.k;
    let det = &g.a * &g.d - &g.b * &g.c;
    if det.is_zero() {
        return Err(Error::Normalize("ad - bc = 0".into()));
    }
    if g.m.is_zero() {
        return Err(Error::Normalize("m = 0".into()));
    }
    let q = |r: &Rat| k.from_rat(r.clone());
    let d_minus_c_theta = k.sub(&q(&g.d), &k.mul(&q(&g.c), &t.theta));
    let d_minus_c_theta_bar = k.sub(&q(&g.d), &k.mul(&q(&g.c), &t.theta_bar));
    if k.is_zero(&d_minus_c_theta) || k.is_zero(&d_minus_c_theta_bar) {
        return Err(Error::Normalize("d - cθ vanishes".into()));
    }
    let theta_new = k.mul(
        &k.add(&k.neg(&q(&g.b)), &k.mul(&q(&g.a), &t.theta)),
        &d_minus_c_theta_bar,
    );
    let nm = k.norm(&d_minus_c_theta);
    let d_new = &nm * &nm / (&g.m * &det * &det);

    let base = t.with_theta(&theta_new)?;
    let tr = base.theta_trace();
    let n = base.theta_norm();
    let mut kappa = Int::one();
    loop {
        let kq = Rat::from_integer(kappa.clone());
        if (&tr * &kq).is_integer() && (&n * &kq * &kq).is_integer() && (&d_new * &kq).is_integer()
        {
            break;
        }
        kappa += 1;
    }
    let kq = k.from_rat(Rat::from_integer(kappa.clone()));
    let scaled = base.with_theta(&k.mul(&theta_new, &kq))?;
    let d_scaled = &d_new * Rat::from_integer(kappa.clone());
    let form = NormalForm::new(scaled, d_scaled)?;
    Ok(Normalized {
        form,
        kappa,
        theta_unscaled: theta_new,
        d_unscaled: d_new,
    })
}

/// Least common multiple of the denominators of the equation.
pub fn denominator(eq: &Form<QQ>) -> Int {
    eq.terms()
        .fold(Int::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::tower::build_tower;
    use crate::{qpoly, rat};

    pub fn ex1() -> NormalForm {
        let t = build_tower(
            &qpoly(&[-1, -1, 0, 1]),
            &qpoly(&[48, 13, 1]),
            &qpoly(&[0, 0, 1]),
        )
        .unwrap();
        NormalForm::new(t, rat(32, 1)).unwrap()
    }

    pub fn ex2() -> NormalForm {
        let t = build_tower(
            &qpoly(&[1, 1, 0, 1]),
            &qpoly(&[35, -4, 1]),
            &qpoly(&[0, 0, 1]),
        )
        .unwrap();
        NormalForm::new(t, rat(175, 1)).unwrap()
    }

    #[test]
    fn equation_is_rational() {
        let s = ex1();
        // x^3 coefficient 1, y x^2 coefficient -32.
        assert_eq!(s.equation.coeff(&[3, 0, 0, 0]), rat(1, 1));
        assert_eq!(s.equation.coeff(&[2, 1, 0, 0]), rat(-32, 1));
        assert_eq!(s.equation.coeff(&[0, 3, 0, 0]), rat(-32 * 48, 1));
        assert!(s.verify_plane_section());
        assert!(ex2().verify_plane_section());
    }

    #[test]
    fn normalization_of_first_example() {
        let t = build_tower(
            &qpoly(&[-1, -1, 0, 1]),
            &qpoly(&[6, -1, 1]),
            &qpoly(&[0, 0, 1]),
        )
        .unwrap();
        let g = GeneralForm {
            m: rat(2, 1),
            a: rat(1, 1),
            b: rat(0, 1),
            c: rat(1, 1),
            d: rat(-1, 1),
            tower: t.clone(),
        };
        let out = normalize(&g).unwrap();
        assert_eq!(out.form.d, rat(32, 1));
        assert_eq!(out.kappa, Int::one());
        assert_eq!(out.form.tower.theta_poly, qpoly(&[48, 13, 1]));
        let k = &t.k;
        let expected = k.sub(&k.neg(&t.theta), &k.from_i64(6));
        assert_eq!(out.form.tower.theta, expected);

        let id = GeneralForm {
            m: rat(1, 1),
            a: rat(1, 1),
            b: rat(0, 1),
            c: rat(0, 1),
            d: rat(1, 1),
            tower: t.clone(),
        };
        let out = normalize(&id).unwrap();
        assert_eq!(out.form.d, rat(1, 1));
        assert_eq!(out.form.tower.theta, t.theta);

        let bad = GeneralForm {
            a: rat(0, 1),
            c: rat(0, 1),
            ..id
        };
        assert!(matches!(normalize(&bad), Err(Error::Normalize(_))));
    }
}
