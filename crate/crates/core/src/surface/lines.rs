//! The 27 lines over their field of definition and the Brauer class.

use crate::error::{Error, Result};
use crate::nf::{nf_factor, nf_roots, nf_sqrt, NfElem, NumberField};
use crate::poly::UniPoly;
use crate::ring::{Field, Ring};
use crate::NfPoly;

use super::geometry::{
    incidence, pairwise_distinct, triple_nine, triple_nine_holds, Geometry, Line, LineName,
    TripleNine,
};
use super::NormalForm;

/// How the resolvent cubic factors over `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolventSplitting {
    /// Three roots in `L`; `L' = L`.
    Split,
    /// One root in `L`; `[L':L] = 2`.
    LinearTimesQuadratic,
    /// Irreducible with square discriminant; `[L':L] = 3`.
    CyclicCubic,
    /// Irreducible with non-square discriminant; `[L':L] = 6`.
    FullCubic,
}

impl ResolventSplitting {
    pub fn relative_degree(&self) -> usize {
        match self {
            ResolventSplitting::Split => 1,
            ResolventSplitting::LinearTimesQuadratic => 2,
            ResolventSplitting::CyclicCubic => 3,
            ResolventSplitting::FullCubic => 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrauerClass {
    Trivial,
    /// Generated by the cyclic algebra `(L(X)/K(X), (x + θ y)/y)`.
    Z3 {
        function: String,
        extension: String,
    },
}

impl BrauerClass {
    pub fn z3() -> Self {
        BrauerClass::Z3 {
            function: "(x+theta*y)/y".into(),
            extension: "L(X)/K(X)".into(),
        }
    }

    pub fn is_z3(&self) -> bool {
        matches!(self, BrauerClass::Z3 { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            BrauerClass::Trivial => "Trivial",
            BrauerClass::Z3 { .. } => "Z3",
        }
    }
}

/// The resolvent `G` over `L` with its splitting data.
#[derive(Clone, Debug)]
pub struct Resolvent {
    pub poly: NfPoly,
    pub factor_degrees: Vec<usize>,
    pub splitting: ResolventSplitting,
    /// `sqrt(disc G)` when it lies in `L`.
    pub sqrt_disc: Option<NfElem>,
}

impl Resolvent {
    /// `[L':Q]`.
    pub fn field_degree(&self) -> usize {
        6 * self.splitting.relative_degree()
    }
}

pub fn resolvent(s: &NormalForm) -> Result<Resolvent> {
    let geo = s.geometry()?;
    let g = geo.resolvent();
    let l = &s.tower.l;
    let factors = nf_factor(&g)?;
    if factors.iter().any(|(_, e)| *e > 1) {
        return Err(Error::Geometry("resolvent cubic is not separable".into()));
    }
    let mut factor_degrees: Vec<usize> = factors.iter().map(|(f, _)| f.degree().unwrap()).collect();
    factor_degrees.sort();
    let disc = g.discriminant()?;
    let sqrt_disc = nf_sqrt(l, &disc)?;
    let splitting = match factor_degrees.as_slice() {
        [1, 1, 1] => ResolventSplitting::Split,
        [1, 2] => ResolventSplitting::LinearTimesQuadratic,
        [3] if sqrt_disc.is_some() => ResolventSplitting::CyclicCubic,
        [3] => ResolventSplitting::FullCubic,
        _ => return Err(Error::Geometry("unexpected resolvent factorization".into())),
    };
    Ok(Resolvent {
        poly: g,
        factor_degrees,
        splitting,
        sqrt_disc,
    })
}

/// `Z3` exactly when `9 | [L':Q]`, that is when the resolvent is irreducible
/// over `L`.
pub fn brauer_classify(s: &NormalForm) -> Result<BrauerClass> {
    let r = resolvent(s)?;
    Ok(classify_degree(r.field_degree()))
}

pub fn classify_degree(degree: usize) -> BrauerClass {
    if degree % 9 == 0 {
        BrauerClass::z3()
    } else {
        BrauerClass::Trivial
    }
}

#[derive(Clone, Debug)]
pub struct LinesReport {
    pub resolvent: Resolvent,
    /// The field of definition `L'`, built as a tower over `L`.
    pub field: NumberField,
    pub degree: usize,
    pub roots: [NfElem; 3],
    pub geometry: Geometry<NumberField>,
    pub lines: Vec<Line<NfElem>>,
    /// `1` if two distinct lines meet, `0` otherwise; zero diagonal.
    pub incidence: Vec<Vec<i32>>,
    pub triple_nine: TripleNine,
    pub all_on_surface: bool,
    pub distinct: bool,
}

impl LinesReport {
    pub fn row_sums(&self) -> Vec<i32> {
        self.incidence.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn schlafli_holds(&self) -> bool {
        let n = self.lines.len();
        n == 27
            && self.row_sums().iter().all(|&s| s == 10)
            && (0..n).all(|a| self.incidence[a][a] == 0)
            && (0..n).all(|a| (0..n).all(|b| self.incidence[a][b] == self.incidence[b][a]))
    }

    pub fn triple_nine_holds(&self) -> bool {
        triple_nine_holds(&self.incidence, &self.triple_nine)
    }

    /// Intersection number of two lines, `-1` for self-intersection.
    pub fn pairing(&self, a: LineName, b: LineName) -> i32 {
        let (a, b) = (a.index(), b.index());
        if a == b {
            -1
        } else {
            self.incidence[a][b]
        }
    }

    /// `(D · L_{1,1})` for `D = L_{0,0} + L_{1,1} + L_{1,0} - H`, with `H` the
    /// hyperplane class meeting every line once.
    pub fn divisor_pairing(&self) -> i32 {
        let n = |i, j| LineName::Nine { i, j };
        let target = n(1, 1);
        self.pairing(n(0, 0), target)
            + self.pairing(n(1, 1), target)
            + self.pairing(n(1, 0), target)
            - 1
    }

    pub fn rational_line_count(&self) -> usize {
        self.lines
            .iter()
            .filter(|line| {
                line.rows
                    .iter()
                    .all(|r| r.iter().all(|c| self.field.as_rational(c).is_some()))
            })
            .count()
    }
}

/// The other two roots of a monic cubic from one root `u0` and a square
/// root `v` of the discriminant: `((-g2 - u0) ± v/g'(u0))/2`.
fn remaining_roots(
    field: &NumberField,
    g: &NfPoly,
    u0: &NfElem,
    v: &NfElem,
) -> Result<[NfElem; 3]> {
    let k = field;
    let sum = k.sub(&k.neg(&g.coeff(2)), u0);
    let dg = g.derivative().eval(u0);
    let diff = k
        .div(v, &dg)
        .ok_or_else(|| Error::Geometry("repeated resolvent root".into()))?;
    let half = k.inv(&k.from_i64(2)).unwrap();
    let u1 = k.mul(&half, &k.add(&sum, &diff));
    let u2 = k.mul(&half, &k.sub(&sum, &diff));
    for u in [&u1, &u2] {
        if !k.is_zero(&g.eval(u)) {
            return Err(Error::Geometry("resolvent root formula failed".into()));
        }
    }
    Ok([u0.clone(), u1, u2])
}

/// Field of definition of the lines and the three resolvent roots in it.
fn line_field(s: &NormalForm, r: &Resolvent) -> Result<(NumberField, [NfElem; 3])> {
    let l = &s.tower.l;
    let g = &r.poly;
    match r.splitting {
        ResolventSplitting::Split => {
            let roots = nf_roots(g)?;
            Ok((
                l.clone(),
                [roots[0].clone(), roots[1].clone(), roots[2].clone()],
            ))
        }
        ResolventSplitting::LinearTimesQuadratic => {
            let roots = nf_roots(g)?;
            let q = g.exact_div(&UniPoly::linear_root(l.clone(), &roots[0]));
            let lp = NumberField::extension_unchecked(l, &q, "L'");
            let u1 = lp.generator();
            let u2 = lp.sub(&lp.neg(&lp.embed_from(l, &q.coeff(1))), &u1);
            Ok((lp.clone(), [lp.embed_from(l, &roots[0]), u1, u2]))
        }
        ResolventSplitting::CyclicCubic => {
            let lp = NumberField::extension_unchecked(l, g, "L'");
            let gl = g.map(lp.clone(), |c| lp.embed_from(l, c));
            let v = lp.embed_from(l, r.sqrt_disc.as_ref().unwrap());
            let roots = remaining_roots(&lp, &gl, &lp.generator(), &v)?;
            Ok((lp, roots))
        }
        ResolventSplitting::FullCubic => {
            let disc = g.discriminant()?;
            let m = UniPoly::new(l.clone(), vec![l.neg(&disc), l.zero(), l.one()]);
            let e = NumberField::extension_unchecked(l, &m, "E");
            let ge = g.map(e.clone(), |c| e.embed_from(l, c));
            let lp = NumberField::extension_unchecked(&e, &ge, "L'");
            let gl = g.map(lp.clone(), |c| lp.embed_from(l, c));
            let v = lp.embed_from(&e, &e.generator());
            let roots = remaining_roots(&lp, &gl, &lp.generator(), &v)?;
            Ok((lp, roots))
        }
    }
}

pub fn all_lines(s: &NormalForm) -> Result<LinesReport> {
    let r = resolvent(s)?;
    let (field, roots) = line_field(s, &r)?;
    let l = &s.tower.l;
    let geometry = s.geometry()?.map(field.clone(), |c| field.embed_from(l, c));
    let lines = geometry.all_lines(&roots)?;
    let all_on_surface = lines.iter().all(|line| geometry.contains(line));
    let distinct = pairwise_distinct(&field, &lines);
    let incidence = incidence(&field, &lines);
    Ok(LinesReport {
        degree: r.field_degree(),
        resolvent: r,
        field,
        roots,
        geometry,
        lines,
        incidence,
        triple_nine: triple_nine(),
        all_on_surface,
        distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::geometry::PERMUTATIONS;
    use crate::surface::tests::{ex1, ex2};
    use crate::{int, rat};

    #[test]
    fn resolvents_agree_across_permutations() {
        let s = ex1();
        let geo = s.geometry().unwrap();
        let g = geo.resolvent();
        let l = &s.tower.l;
        for perm in PERMUTATIONS {
            let r = s.resolvent_cubic(perm).unwrap();
            assert_eq!(r.degree(), Some(3));
            assert!(r.is_squarefree());
            // u = n_j E_j(t) carries the parametrized cubic onto G.
            let [i, j, _] = perm;
            let ratio = l.div(&geo.phi[j], &geo.phi[i]).unwrap();
            let ej = UniPoly::new(
                l.clone(),
                vec![
                    l.sub(&l.one(), &ratio),
                    l.sub(&geo.psi[j], &l.mul(&geo.psi[i], &ratio)),
                ],
            );
            let u = ej.scale(&geo.n[j]);
            let composed = g.compose(&u);
            assert_eq!(composed.monic(), r, "permutation {:?}", perm);
        }
        assert!(s.resolvent_cubic([0, 0, 1]).is_err());
    }

    #[test]
    fn nine_lines_pairings() {
        let s = ex1();
        let geo = s.geometry().unwrap();
        let lines = geo.nine_lines();
        assert!(lines.iter().all(|line| geo.contains(line)));
        let inc = incidence(&s.tower.l, &lines);
        let idx = |i: usize, j: usize| 3 * i + j;
        assert_eq!(inc[idx(0, 0)][idx(1, 1)], 0);
        assert_eq!(inc[idx(0, 0)][idx(0, 1)], 1);
    }

    #[test]
    fn examples_have_order_three_brauer_class() {
        for s in [ex1(), ex2()] {
            let r = resolvent(&s).unwrap();
            assert_eq!(r.factor_degrees, vec![3]);
            assert!(brauer_classify(&s).unwrap().is_z3());
        }
    }

    // disc G is rational and outside the square classes {1, disc K}, so it
    // is not a square in L and the resolvent has group S3 over L.
    #[test]
    fn resolvent_discriminants_are_rational_non_squares() {
        for (s, q, sf) in [
            (ex1(), rat(2432, 12167), 874),
            (ex2(), rat(3741675, 476656), 3 * 7 * 7127 * 31),
        ] {
            let l = &s.tower.l;
            let disc = s.geometry().unwrap().resolvent().discriminant().unwrap();
            assert_eq!(l.as_rational(&disc), Some(q));
            assert_ne!(int(sf), s.tower.disc_sf);
            let r = resolvent(&s).unwrap();
            assert!(r.sqrt_disc.is_none());
            assert_eq!(r.splitting, ResolventSplitting::FullCubic);
            assert_eq!(r.field_degree(), 36);
        }
    }
}

#[cfg(test)]
mod full {
    use super::*;
    use crate::surface::tests::ex1;

    #[test]
    fn full_report_first_example() {
        let s = ex1();
        let r = all_lines(&s).unwrap();
        assert_eq!(r.degree, 36);
        assert!(r.all_on_surface);
        assert!(r.distinct);
        assert!(r.schlafli_holds());
        assert!(r.triple_nine_holds());
        assert_eq!(r.divisor_pairing(), -1);
    }
}
