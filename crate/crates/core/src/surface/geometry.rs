//! Lines on `∏(x + φi z + ψi w) = d y (x + θ y)(x + θ̄ y)` over any field
//! containing the `φi`, `θ` and the resolvent roots.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::ring::Field;

/// All permutations of `(0, 1, 2)` in lexicographic order.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineName {
    /// `L_{i,j}`: `x + φi z + ψi w = 0` on the plane `y = 0`, `x + θ y = 0`
    /// or `x + θ̄ y = 0` for `j = 0, 1, 2`.
    Nine { i: usize, j: usize },
    /// `L_{(i,j,k),n}`: `z = A x + B y`, `w = C x + D y` for the `n`-th
    /// resolvent root.
    Big { perm: [usize; 3], n: usize },
}

impl LineName {
    /// Position in the standard ordering of the 27 lines.
    pub fn index(&self) -> usize {
        match *self {
            LineName::Nine { i, j } => 3 * i + j,
            LineName::Big { perm, n } => {
                let k = PERMUTATIONS.iter().position(|p| *p == perm).unwrap();
                9 + 3 * k + n
            }
        }
    }

    pub fn from_index(idx: usize) -> LineName {
        if idx < 9 {
            LineName::Nine {
                i: idx / 3,
                j: idx % 3,
            }
        } else {
            LineName::Big {
                perm: PERMUTATIONS[(idx - 9) / 3],
                n: (idx - 9) % 3,
            }
        }
    }

    pub fn all() -> Vec<LineName> {
        (0..27).map(LineName::from_index).collect()
    }
}

impl fmt::Display for LineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineName::Nine { i, j } => write!(f, "L_{{{},{}}}", i, j),
            LineName::Big { perm, n } => {
                write!(f, "L_{{({},{},{}),{}}}", perm[0], perm[1], perm[2], n)
            }
        }
    }
}

/// A line as the common zero set of two linear forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<E> {
    pub name: LineName,
    pub rows: [Vec<E>; 2],
}

/// The three nines: `[nine][row][column]` holds a line index.
pub type TripleNine = [[[usize; 3]; 3]; 3];

pub fn triple_nine() -> TripleNine {
    let nine = |i, j| LineName::Nine { i, j }.index();
    let big = |perm, n| LineName::Big { perm, n }.index();
    let first = [
        [nine(0, 0), nine(1, 1), nine(2, 2)],
        [nine(1, 2), nine(2, 0), nine(0, 1)],
        [nine(2, 1), nine(0, 2), nine(1, 0)],
    ];
    let rows2 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let rows3 = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];
    let second = rows2.map(|p| [big(p, 0), big(p, 1), big(p, 2)]);
    let third = rows3.map(|p| [big(p, 0), big(p, 1), big(p, 2)]);
    [first, second, third]
}

/// Surface data over a field `F`.
#[derive(Clone, Debug)]
pub struct Geometry<F: Field> {
    pub field: F,
    pub phi: [F::Elem; 3],
    pub psi: [F::Elem; 3],
    pub theta: F::Elem,
    pub theta_bar: F::Elem,
    pub d: F::Elem,
    /// `Σ n_m (1, φm, ψm) = (1, 0, 0)`.
    pub n: [F::Elem; 3],
}

/// Solves `M v = b` for an invertible matrix by Gaussian elimination.
pub fn solve<F: Field>(field: &F, m: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        let inv = field.inv(&a[col][col])?;
        for c in col..=n {
            a[col][c] = field.mul(&a[col][c], &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let t = field.mul(&factor, &a[col][c]);
                    a[r][c] = field.sub(&a[r][c], &t);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Two vectors spanning the kernel of a rank-2 `2 × 4` matrix, by Cramer's
/// rule scaled by the pivot minor so that no inversion is needed.
pub fn kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>; 2]) -> Option<[Vec<F::Elem>; 2]> {
    let minor = |a: usize, b: usize| {
        field.sub(
            &field.mul(&rows[0][a], &rows[1][b]),
            &field.mul(&rows[0][b], &rows[1][a]),
        )
    };
    for a in 0..4 {
        for b in a + 1..4 {
            let det = minor(a, b);
            if field.is_zero(&det) {
                continue;
            }
            let vector = |f: usize| {
                let mut v = vec![field.zero(); 4];
                v[a] = minor(b, f);
                v[b] = minor(f, a);
                v[f] = det.clone();
                v
            };
            let free: Vec<usize> = (0..4).filter(|&c| c != a && c != b).collect();
            return Some([vector(free[0]), vector(free[1])]);
        }
    }
    None
}

/// Dual Plücker coordinates `q_ab = r0_a r1_b - r0_b r1_a` in the order
/// `01, 02, 03, 12, 13, 23`.
pub fn plucker<F: Field>(field: &F, rows: &[Vec<F::Elem>; 2]) -> [F::Elem; 6] {
    let q = |a: usize, b: usize| {
        field.sub(
            &field.mul(&rows[0][a], &rows[1][b]),
            &field.mul(&rows[0][b], &rows[1][a]),
        )
    };
    [q(0, 1), q(0, 2), q(0, 3), q(1, 2), q(1, 3), q(2, 3)]
}

/// Determinant of the four stacked rows of two lines.
pub fn plucker_pairing<F: Field>(field: &F, q: &[F::Elem; 6], r: &[F::Elem; 6]) -> F::Elem {
    let terms = [
        field.mul(&q[0], &r[5]),
        field.neg(&field.mul(&q[1], &r[4])),
        field.mul(&q[2], &r[3]),
        field.mul(&q[3], &r[2]),
        field.neg(&field.mul(&q[4], &r[1])),
        field.mul(&q[5], &r[0]),
    ];
    field.sum(terms.iter())
}

/// Scales a Plücker vector so that its first nonzero entry is one.
pub fn normalize_plucker<F: Field>(field: &F, q: &[F::Elem; 6]) -> Option<[F::Elem; 6]> {
    let lead = q.iter().find(|c| !field.is_zero(c))?;
    let inv = field.inv(lead)?;
    Some(q.clone().map(|c| field.mul(&c, &inv)))
}

/// Reduced row echelon form of a rank-2 `2 × 4` matrix.
pub fn rref<F: Field>(field: &F, rows: &[Vec<F::Elem>; 2]) -> Option<[Vec<F::Elem>; 2]> {
    let mut a = rows.clone();
    let mut r = 0;
    for col in 0..4 {
        if r == 2 {
            break;
        }
        let Some(piv) = (r..2).find(|&i| !field.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(r, piv);
        let inv = field.inv(&a[r][col])?;
        a[r] = a[r].iter().map(|c| field.mul(c, &inv)).collect();
        let other = 1 - r;
        if !field.is_zero(&a[other][col]) {
            let factor = a[other][col].clone();
            a[other] = a[other]
                .iter()
                .zip(&a[r])
                .map(|(x, y)| field.sub(x, &field.mul(&factor, y)))
                .collect();
        }
        r += 1;
    }
    if r < 2 {
        None
    } else {
        Some(a)
    }
}

/// Coefficients of `(a0 s + b0 t)(a1 s + b1 t)(a2 s + b2 t)`.
fn cubic_product<F: Field>(field: &F, factors: &[(F::Elem, F::Elem); 3]) -> [F::Elem; 4] {
    let mut out = vec![field.one()];
    for (a, b) in factors {
        let mut next = vec![field.zero(); out.len() + 1];
        for (k, c) in out.iter().enumerate() {
            next[k] = field.add(&next[k], &field.mul(c, a));
            next[k + 1] = field.add(&next[k + 1], &field.mul(c, b));
        }
        out = next;
    }
    [
        out[0].clone(),
        out[1].clone(),
        out[2].clone(),
        out[3].clone(),
    ]
}

impl<F: Field> Geometry<F> {
    pub fn new(
        field: F,
        phi: [F::Elem; 3],
        psi: [F::Elem; 3],
        theta: F::Elem,
        theta_bar: F::Elem,
        d: F::Elem,
    ) -> Result<Self> {
        let one = field.one();
        let zero = field.zero();
        let m: Vec<Vec<F::Elem>> = vec![
            vec![one.clone(), one.clone(), one.clone()],
            phi.to_vec(),
            psi.to_vec(),
        ];
        let n = solve(&field, &m, &[one, zero.clone(), zero])
            .ok_or_else(|| Error::Geometry("1, φ, ψ are linearly dependent".into()))?;
        if n.iter().any(|c| field.is_zero(c)) {
            return Err(Error::Geometry("degenerate conjugate basis".into()));
        }
        if field.is_zero(&field.sub(&theta, &theta_bar)) {
            return Err(Error::Geometry("θ equals its conjugate".into()));
        }
        let n = [n[0].clone(), n[1].clone(), n[2].clone()];
        Ok(Geometry {
            field,
            phi,
            psi,
            theta,
            theta_bar,
            d,
            n,
        })
    }

    /// The same data in a larger field.
    pub fn map<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> G::Elem) -> Geometry<G> {
        let arr = |a: &[F::Elem; 3]| [f(&a[0]), f(&a[1]), f(&a[2])];
        Geometry {
            phi: arr(&self.phi),
            psi: arr(&self.psi),
            theta: f(&self.theta),
            theta_bar: f(&self.theta_bar),
            d: f(&self.d),
            n: arr(&self.n),
            field,
        }
    }

    /// Monic `G(u) ∝ u (u - 1)(θ̄ + u (θ - θ̄)) - d n0 n1 n2`; its roots
    /// index the lines `L_{(i,j,k),n}` for every permutation at once.
    pub fn resolvent(&self) -> UniPoly<F> {
        let k = &self.field;
        let delta = k.sub(&self.theta, &self.theta_bar);
        let c = k.mul(&self.d, &k.mul(&self.n[0], &k.mul(&self.n[1], &self.n[2])));
        let g = UniPoly::new(
            k.clone(),
            vec![
                k.neg(&c),
                k.neg(&self.theta_bar),
                k.sub(&self.theta_bar, &delta),
                delta.clone(),
            ],
        );
        g.monic()
    }

    /// The cubic in the parameter `t` (equal to `C`, or to `A` when
    /// `φi = 0`) whose roots give the lines of one permutation.
    pub fn resolvent_in_parameter(&self, perm: [usize; 3]) -> Result<UniPoly<F>> {
        check_perm(perm)?;
        let k = &self.field;
        let [i, j, l] = perm;
        let one = k.one();
        // E_m(t) = 1 + A φm + C ψm with one of A, C eliminated.
        let affine = |m: usize| -> UniPoly<F> {
            if !k.is_zero(&self.phi[i]) {
                let r = k.div(&self.phi[m], &self.phi[i]).expect("φi is nonzero");
                UniPoly::new(
                    k.clone(),
                    vec![
                        k.sub(&one, &r),
                        k.sub(&self.psi[m], &k.mul(&self.psi[i], &r)),
                    ],
                )
            } else {
                let r = k.div(&self.psi[m], &self.psi[i]).expect("ψi is nonzero");
                UniPoly::new(
                    k.clone(),
                    vec![
                        k.sub(&one, &r),
                        k.sub(&self.phi[m], &k.mul(&self.phi[i], &r)),
                    ],
                )
            }
        };
        let ej = affine(j);
        let el = affine(l);
        let mat = vec![
            vec![self.phi[j].clone(), self.phi[l].clone()],
            vec![self.psi[j].clone(), self.psi[l].clone()],
        ];
        let ab = solve(k, &mat, &[self.phi[i].clone(), self.psi[i].clone()])
            .ok_or_else(|| Error::Geometry("singular conjugate matrix".into()))?;
        let fi =
            &ej.scale(&k.mul(&ab[0], &self.theta)) + &el.scale(&k.mul(&ab[1], &self.theta_bar));
        let cubic = &(&(&ej * &el) * &fi) - &UniPoly::constant(k.clone(), self.d.clone());
        Ok(cubic.monic())
    }

    pub fn nine_line(&self, i: usize, j: usize) -> Line<F::Elem> {
        let k = &self.field;
        let first = vec![k.one(), k.zero(), self.phi[i].clone(), self.psi[i].clone()];
        let second = match j {
            0 => vec![k.zero(), k.one(), k.zero(), k.zero()],
            1 => vec![k.one(), self.theta.clone(), k.zero(), k.zero()],
            _ => vec![k.one(), self.theta_bar.clone(), k.zero(), k.zero()],
        };
        Line {
            name: LineName::Nine { i, j },
            rows: [first, second],
        }
    }

    pub fn nine_lines(&self) -> Vec<Line<F::Elem>> {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| self.nine_line(i, j))
            .collect()
    }

    /// `L_{(i,j,k),n}` for the resolvent root `u`.
    pub fn big_line(&self, perm: [usize; 3], u: &F::Elem, n: usize) -> Result<Line<F::Elem>> {
        check_perm(perm)?;
        let k = &self.field;
        let [_, j, l] = perm;
        let ej = k.div(u, &self.n[j]).expect("n is nonzero");
        let el = k
            .div(&k.sub(&k.one(), u), &self.n[l])
            .expect("n is nonzero");
        let mat = vec![
            vec![self.phi[j].clone(), self.psi[j].clone()],
            vec![self.phi[l].clone(), self.psi[l].clone()],
        ];
        let one = k.one();
        let ac = solve(k, &mat, &[k.sub(&ej, &one), k.sub(&el, &one)])
            .ok_or_else(|| Error::Geometry("singular conjugate matrix".into()))?;
        let bd = solve(
            k,
            &mat,
            &[k.mul(&self.theta, &ej), k.mul(&self.theta_bar, &el)],
        )
        .ok_or_else(|| Error::Geometry("singular conjugate matrix".into()))?;
        let minus = k.neg(&one);
        Ok(Line {
            name: LineName::Big { perm, n },
            rows: [
                vec![ac[0].clone(), bd[0].clone(), minus.clone(), k.zero()],
                vec![ac[1].clone(), bd[1].clone(), k.zero(), minus],
            ],
        })
    }

    /// All 27 lines in the standard order, given the three resolvent roots.
    pub fn all_lines(&self, roots: &[F::Elem; 3]) -> Result<Vec<Line<F::Elem>>> {
        let mut out = self.nine_lines();
        for perm in PERMUTATIONS {
            for (n, u) in roots.iter().enumerate() {
                out.push(self.big_line(perm, u, n)?);
            }
        }
        Ok(out)
    }

    /// Whether the surface contains the line, by restricting the factored
    /// equation to two spanning points.
    pub fn contains(&self, line: &Line<F::Elem>) -> bool {
        let k = &self.field;
        let Some([p, q]) = kernel(k, &line.rows) else {
            return false;
        };
        let lin = |c: &[F::Elem; 4]| -> (F::Elem, F::Elem) {
            let ev = |v: &Vec<F::Elem>| {
                k.sum(
                    c.iter()
                        .zip(v)
                        .map(|(a, b)| k.mul(a, b))
                        .collect::<Vec<_>>()
                        .iter(),
                )
            };
            (ev(&p), ev(&q))
        };
        let one = k.one();
        let zero = k.zero();
        let left = cubic_product(
            k,
            &[0, 1, 2].map(|i| {
                lin(&[
                    one.clone(),
                    zero.clone(),
                    self.phi[i].clone(),
                    self.psi[i].clone(),
                ])
            }),
        );
        let y = lin(&[zero.clone(), one.clone(), zero.clone(), zero.clone()]);
        let y = (k.mul(&self.d, &y.0), k.mul(&self.d, &y.1));
        let right = cubic_product(
            k,
            &[
                y,
                lin(&[one.clone(), self.theta.clone(), zero.clone(), zero.clone()]),
                lin(&[
                    one.clone(),
                    self.theta_bar.clone(),
                    zero.clone(),
                    zero.clone(),
                ]),
            ],
        );
        left.iter().zip(&right).all(|(a, b)| a == b)
    }
}

fn check_perm(perm: [usize; 3]) -> Result<()> {
    if PERMUTATIONS.contains(&perm) {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "{:?} is not a permutation of (0,1,2)",
            perm
        )))
    }
}

/// Intersection numbers of distinct lines: `1` if they meet, `0` if skew.
pub fn incidence<F: Field>(field: &F, lines: &[Line<F::Elem>]) -> Vec<Vec<i32>> {
    let pl: Vec<[F::Elem; 6]> = lines.iter().map(|l| plucker(field, &l.rows)).collect();
    let n = lines.len();
    let mut m = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let meet = field.is_zero(&plucker_pairing(field, &pl[a], &pl[b]));
            m[a][b] = meet as i32;
            m[b][a] = meet as i32;
        }
    }
    m
}

/// Lines are pairwise distinct as points of the Grassmannian.
pub fn pairwise_distinct<F: Field>(field: &F, lines: &[Line<F::Elem>]) -> bool {
    let pl: Vec<[F::Elem; 6]> = lines.iter().map(|l| plucker(field, &l.rows)).collect();
    if pl.iter().any(|q| q.iter().all(|c| field.is_zero(c))) {
        return false;
    }
    let proportional = |q: &[F::Elem; 6], r: &[F::Elem; 6]| {
        (0..6).all(|i| (i + 1..6).all(|j| field.mul(&q[i], &r[j]) == field.mul(&q[j], &r[i])))
    };
    for a in 0..pl.len() {
        for b in a + 1..pl.len() {
            if proportional(&pl[a], &pl[b]) {
                return false;
            }
        }
    }
    true
}

/// Checks the pairing rule inside each nine: `-1` on the diagonal, `1` when
/// row and column both differ, `0` otherwise.
pub fn triple_nine_holds(incidence: &[Vec<i32>], layout: &TripleNine) -> bool {
    for nine in layout {
        for r1 in 0..3 {
            for c1 in 0..3 {
                for r2 in 0..3 {
                    for c2 in 0..3 {
                        let (a, b) = (nine[r1][c1], nine[r2][c2]);
                        let expected = if a == b {
                            -1
                        } else if r1 != r2 && c1 != c2 {
                            1
                        } else {
                            0
                        };
                        let actual = if a == b { -1 } else { incidence[a][b] };
                        if actual != expected {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}
