//! Coordinate changes C₀…C₁₅ between standard charts related by a braid
//! move, the matrix identities behind them, and the Jacobian sign rule for
//! the logarithmic volume form `∧ dt/t`.
//!
//! Each transform is stated with two simple roots `i` and `j`. For B₂ and
//! for C₁₁…C₁₅ the root `i` is long. For C₈, C₉ and C₁₀ the identities hold
//! with `i` short in the certified 7-dimensional G₂ module; the same
//! closed forms are used.

use crate::autodiff::Dual;
use crate::chevalley::MatrixRep;
use crate::deodhar;
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Q};
use crate::weyl::{braid_move, CartanLabel, CartanSpec, WeylWord};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BraidError {
    #[error("denominator {0} vanishes at the input")]
    Singular(&'static str),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("configuration error: {0}")]
    Config(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransformId {
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    C13,
    C14,
    C15,
}

use TransformId::*;

impl TransformId {
    pub const ALL: [TransformId; 16] = [C0, C1, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11, C12, C13, C14, C15];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> String {
        format!("C{}", self.index())
    }

    pub fn arity(self) -> usize {
        match self {
            C0 | C2 | C5 | C7 | C15 => 2,
            C1 | C4 | C6 | C13 | C14 => 3,
            C3 | C11 | C12 => 4,
            C9 | C10 => 5,
            C8 => 6,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            C0 | C2 | C3 | C5 | C7 | C8 | C11 | C12 | C15 => -1,
            _ => 1,
        }
    }

    pub fn bond(self) -> usize {
        match self {
            C0 => 2,
            C1 | C2 => 3,
            C3 | C4 | C5 | C6 | C7 => 4,
            _ => 6,
        }
    }

    /// The identity holds only modulo a right factor in U₋.
    pub fn up_to_lower_unipotent(self) -> bool {
        matches!(self, C5 | C7 | C9 | C10 | C11 | C12 | C13 | C14 | C15)
    }

    /// Whether the root playing the role `i` must be long (`None` when the
    /// roots have equal length).
    pub fn i_is_long(self) -> Option<bool> {
        match self {
            C0 | C1 | C2 => None,
            C8 | C9 | C10 => Some(false),
            _ => Some(true),
        }
    }

    pub fn default_rep(self) -> MatrixRep {
        match self.bond() {
            2 => MatrixRep::type_a(3),
            3 => MatrixRep::type_a(2),
            4 => MatrixRep::b2(),
            _ => MatrixRep::g2(),
        }
    }

    /// Simple indices `(i, j)` in [`TransformId::default_rep`].
    pub fn default_roles(self) -> (usize, usize) {
        match self {
            C0 => (1, 3),
            C8 | C9 | C10 => (2, 1),
            _ => (1, 2),
        }
    }

    /// Source and target factor patterns.
    pub fn pattern(self) -> (&'static str, &'static str) {
        match self {
            C0 => ("x_i x_j", "x_j x_i"),
            C1 => ("x_i x_j x_i", "x_j x_i x_j"),
            C2 => ("x_i x_j s_i", "x_j s_i x_j y_i"),
            C3 => ("x_j x_i x_j x_i", "x_i x_j x_i x_j"),
            C4 => ("x_i x_j x_i s_j", "x_j x_i s_j x_i y_j"),
            C5 => ("x_j x_i s_j s_i", "x_i s_j s_i x_j u"),
            C6 => ("x_j x_i x_j s_i", "x_i x_j s_i x_j y_i"),
            C7 => ("x_i x_j s_i s_j", "x_j s_i s_j x_i u"),
            C8 => ("x_i x_j x_i x_j x_i x_j", "x_j x_i x_j x_i x_j x_i"),
            C9 => ("x_i x_j x_i x_j s_i x_j", "x_j x_i x_j x_i x_j s_i u"),
            C10 => ("x_j x_i x_j x_i s_j x_i", "x_i x_j x_i x_j x_i s_j u"),
            C11 => ("x_j x_i x_j x_i s_j s_i", "x_i x_j x_i s_j s_i x_j u"),
            C12 => ("x_j x_i x_j s_i s_j x_i", "x_i x_j x_i x_j s_i s_j u"),
            C13 => ("x_j x_i x_j s_i s_j s_i", "x_i x_j s_i s_j s_i x_j u"),
            C14 => ("x_j x_i s_j s_i s_j x_i", "x_i x_j x_i s_j s_i s_j u"),
            C15 => ("x_i x_j s_i s_j s_i s_j", "x_j s_i s_j s_i s_j x_i u"),
        }
    }
}

fn nz<S: Scalar>(name: &'static str, v: S) -> Result<S, BraidError> {
    if v.is_zero() {
        Err(BraidError::Singular(name))
    } else {
        Ok(v)
    }
}

fn int<S: Scalar>(k: i64) -> S {
    S::from_i64(k)
}

/// Image of `coords` under the transform's closed form.
pub fn apply<S: Scalar>(tr: TransformId, coords: &[S]) -> Result<Vec<S>, BraidError> {
    if coords.len() != tr.arity() {
        return Err(BraidError::Arity { expected: tr.arity(), got: coords.len() });
    }
    let v = |k: usize| coords[k].clone();
    let p = |x: S, k: u32| x.powi(k);
    Ok(match tr {
        C0 => vec![v(1), v(0)],
        C1 | C4 => {
            let (a, b, c) = (v(0), v(1), v(2));
            let s = nz("a+c", a.clone() + c.clone())?;
            let third = if tr == C1 { a.clone() * b.clone() } else { a.clone() * b.clone() * b.clone() * c.clone() };
            vec![b * c / s.clone(), s.clone(), third / s]
        }
        C2 | C5 => vec![v(1), v(0) * v(1)],
        C7 => vec![v(1), v(0) * v(1) * v(1)],
        C15 => vec![v(1), v(0) * p(v(1), 3)],
        C3 => {
            let (a, b, c, d) = (v(0), v(1), v(2), v(3));
            let ac = a.clone() + c.clone();
            let x = nz("x", a.clone() * a.clone() * b.clone() + d.clone() * ac.clone() * ac.clone())?;
            let y = nz("y", a.clone() * b.clone() + d.clone() * ac)?;
            vec![
                b.clone() * c.clone() * c.clone() * d / x.clone(),
                x.clone() / y.clone(),
                y.clone() * y.clone() / x,
                a * b * c / y,
            ]
        }
        C6 => {
            let (a, b, c) = (v(0), v(1), v(2));
            let s = nz("a+c", a.clone() + c.clone())?;
            vec![c.clone() * c.clone() * b.clone() / (s.clone() * s.clone()), s.clone(), a * b * c / s]
        }
        C8 => {
            let (a, b, c, d, e, f) = (v(0), v(1), v(2), v(3), v(4), v(5));
            let ce = c.clone() + e.clone();
            let ac = a.clone() + c.clone();
            let ab = a.clone() * b.clone();
            let de2f = d.clone() * e.clone() * e.clone() * f.clone();
            let pi1 = nz(
                "pi1",
                ab.clone() * c.clone() * c.clone() * d.clone()
                    + ab.clone() * ce.clone() * ce.clone() * f.clone()
                    + ac.clone() * de2f.clone(),
            )?;
            let k2 = int::<S>(3) * a.clone() * c.clone()
                + int::<S>(2) * c.clone() * c.clone()
                + int::<S>(2) * c.clone() * e.clone()
                + int::<S>(2) * a.clone() * e.clone();
            let k3 = int::<S>(3) * a.clone() * c.clone()
                + int::<S>(3) * c.clone() * c.clone()
                + int::<S>(3) * c.clone() * e.clone()
                + int::<S>(2) * a.clone() * e.clone();
            let c3d = p(c.clone(), 3) * d.clone();
            let e3f = p(e.clone(), 3) * f.clone();
            let pi2 = nz(
                "pi2",
                p(ab.clone(), 2) * c3d.clone()
                    + p(ab.clone(), 2) * p(ce.clone(), 3) * f.clone()
                    + p(ac.clone(), 2) * d.clone() * d.clone() * e3f.clone()
                    + ab.clone() * de2f.clone() * k2,
            )?;
            let pi3 = nz(
                "pi3",
                p(a.clone(), 3) * b.clone() * b.clone() * c3d.clone()
                    + p(a.clone(), 3) * b.clone() * b.clone() * p(ce.clone(), 3) * f.clone()
                    + p(ac.clone(), 3) * d.clone() * d.clone() * e3f.clone()
                    + a.clone() * a.clone() * b.clone() * de2f.clone() * k3.clone(),
            )?;
            let inner = ab.clone() * c3d.clone()
                + int::<S>(2) * ab.clone() * p(ce.clone(), 3) * f.clone()
                + k3 * de2f.clone();
            let cube = ab.clone() * ce.clone() * ce.clone() + ac * d.clone() * e.clone() * e.clone();
            let pi4 = nz("pi4", p(ab.clone(), 2) * c3d * inner + f.clone() * f.clone() * p(cube, 3))?;
            vec![
                b.clone() * p(c.clone(), 3) * d.clone() * d.clone() * e3f / pi3.clone(),
                pi3.clone() / pi2.clone(),
                p(pi2.clone(), 3) / (pi3 * pi4.clone()),
                pi4.clone() / (pi1.clone() * pi2),
                p(pi1.clone(), 3) / pi4,
                ab * c.clone() * c * d * e / pi1,
            ]
        }
        C9 => {
            let (a, b, c, d, e) = (v(0), v(1), v(2), v(3), v(4));
            let w = c.clone() * d.clone() + a.clone() * b.clone() + a.clone() * d.clone();
            let tail = int::<S>(2) * b.clone() * d.clone() * e.clone()
                + d.clone() * d.clone() * e.clone()
                + b.clone() * b.clone() * (p(c.clone(), 3) * d.clone() + e.clone());
            let x = nz(
                "x",
                int::<S>(3) * a.clone() * c.clone() * d.clone() * e.clone() * w.clone()
                    + p(c.clone(), 3) * d.clone() * d.clone() * e.clone()
                    + p(a.clone(), 3) * tail.clone(),
            )?;
            let y = nz(
                "y",
                c.clone() * d.clone() * e.clone() * w.clone()
                    + a.clone() * c.clone() * d.clone() * (b.clone() + d.clone()) * e.clone()
                    + a.clone() * a.clone() * tail,
            )?;
            let ab = a.clone() * b.clone();
            let z = nz(
                "z",
                e.clone() * w.clone() * (y.clone() + ab.clone() * ab.clone() * p(c.clone(), 3) * d.clone())
                    + ab.clone() * ab.clone() * p(c.clone(), 4) * d.clone() * d.clone() * (e.clone() + ab.clone() * c.clone() * c.clone()),
            )?;
            let vv = nz("v", ab.clone() * ab.clone() * p(c.clone(), 3) * d.clone() + e.clone() * w.clone() * w)?;
            vec![
                b.clone() * p(c.clone(), 3) * d.clone() * d.clone() * e / x.clone(),
                x.clone() / y.clone(),
                p(y, 3) / (x * z.clone()),
                z.clone() / (ab.clone() * c.clone() * c.clone() * d.clone() * vv),
                p(ab, 3) * p(c, 6) * p(d, 3) / z,
            ]
        }
        C10 => {
            let (a, b, c, d, e) = (v(0), v(1), v(2), v(3), v(4));
            let inner = int::<S>(2) * b.clone() * d.clone() * e.clone()
                + d.clone() * d.clone() * e.clone()
                + b.clone() * b.clone() * (c.clone() * d.clone() + e.clone());
            let x = nz("x'", c.clone() * d.clone() * d.clone() * e.clone() + a.clone() * inner.clone())?;
            let y = nz(
                "y'",
                c.clone() * c.clone() * p(d.clone(), 6) * p(e.clone(), 3)
                    + a.clone() * a.clone() * p(inner, 3)
                    + a.clone()
                        * c.clone()
                        * p(d.clone(), 3)
                        * (b.clone() + d.clone())
                        * e.clone()
                        * e.clone()
                        * (int::<S>(4) * b.clone() * d.clone() * e.clone()
                            + int::<S>(2) * d.clone() * d.clone() * e.clone()
                            + b.clone()
                                * b.clone()
                                * (int::<S>(3) * c.clone() * d.clone() + int::<S>(2) * e.clone())),
            )?;
            let cde = c.clone() * d.clone() + e.clone();
            let z = nz(
                "z'",
                c.clone() * p(d.clone(), 3) * e.clone() * e.clone()
                    + a.clone()
                        * (int::<S>(3) * b.clone() * d.clone() * d.clone() * e.clone() * e.clone()
                            + p(d.clone(), 3) * e.clone() * e.clone()
                            + p(b.clone(), 3) * cde.clone() * cde
                            + b.clone()
                                * b.clone()
                                * d.clone()
                                * e.clone()
                                * (int::<S>(2) * c.clone() * d.clone() + int::<S>(3) * e.clone())),
            )?;
            let m = a.clone() * p(b.clone(), 3) * c.clone() * c.clone() * p(d.clone(), 3);
            vec![
                b * c * d.clone() * d * e / x.clone(),
                p(x.clone(), 3) / y.clone(),
                y.clone() / (x * z.clone()),
                p(z.clone(), 3) / (m.clone() * y),
                m / z,
            ]
        }
        C11 => {
            let (a, b, c, d) = (v(0), v(1), v(2), v(3));
            let z1 = nz("z1", c.clone() * d.clone() + a.clone() * (b.clone() + d.clone()))?;
            let ac = a.clone() + c.clone();
            let z2 = a.clone() * a.clone() * b.clone() + ac.clone() * ac * d.clone();
            let den = nz("a z1^2 + c d z2", a.clone() * z1.clone() * z1.clone() + c.clone() * d.clone() * z2)?;
            vec![
                b.clone() * p(c.clone(), 3) * d.clone() * d.clone() / den.clone(),
                den.clone() / (z1.clone() * z1.clone()),
                p(z1.clone(), 3) / den,
                a * b * c.clone() * c * d / z1,
            ]
        }
        C12 => {
            let (a, b, c, d) = (v(0), v(1), v(2), v(3));
            let ac = a.clone() + c.clone();
            let ab = a.clone() * b.clone();
            let z3 = nz("z3", ab.clone() * ab.clone() * p(c.clone(), 3) + ac.clone() * ac.clone() * d.clone())?;
            let z4 = nz("z4", a.clone() * ab.clone() * ab.clone() * p(c.clone(), 3) + p(ac, 3) * d.clone())?;
            vec![
                b * p(c.clone(), 3) * d / z4.clone(),
                z4.clone() / z3.clone(),
                p(z3.clone(), 3) / (p(ab.clone(), 3) * p(c.clone(), 6) * z4),
                ab.clone() * ab * p(c, 4) / z3,
            ]
        }
        C13 => {
            let (a, b, c) = (v(0), v(1), v(2));
            let s = nz("a+c", a.clone() + c.clone())?;
            vec![b.clone() * p(c.clone(), 3) / p(s.clone(), 3), s.clone(), a * b * c.clone() * c / s]
        }
        C14 => {
            let (a, b, c) = (v(0), v(1), v(2));
            let a3b2 = p(a.clone(), 3) * b.clone() * b.clone();
            let den = nz("a^3 b^2 + c", a3b2.clone() + c.clone())?;
            vec![
                b.clone() * c / den.clone(),
                den.clone() / (a.clone() * a.clone() * b.clone() * b.clone()),
                a3b2 * b / den,
            ]
        }
    })
}

/// Inverse coordinate change, tabulated for the transforms used by chart
/// transitions.
pub fn apply_inverse<S: Scalar>(tr: TransformId, coords: &[S]) -> Result<Vec<S>, BraidError> {
    if coords.len() != tr.arity() {
        return Err(BraidError::Arity { expected: tr.arity(), got: coords.len() });
    }
    match tr {
        C0 | C1 => apply(tr, coords),
        C2 => {
            let a = nz("a'", coords[0].clone())?;
            Ok(vec![coords[1].clone() / a.clone(), a])
        }
        C3 => {
            let rev: Vec<S> = coords.iter().rev().cloned().collect();
            let mut out = apply(C3, &rev)?;
            out.reverse();
            Ok(out)
        }
        _ => Err(BraidError::Config(format!("no tabulated inverse for {}", tr.name()))),
    }
}

struct Roles<'a> {
    rep: &'a MatrixRep,
    i: usize,
    j: usize,
}

enum Root {
    I,
    J,
}

impl Roles<'_> {
    fn idx(&self, r: &Root) -> usize {
        match r {
            Root::I => self.i,
            Root::J => self.j,
        }
    }
    fn x(&self, r: Root, s: &Q) -> Matrix<Q> {
        self.rep.x(self.idx(&r), s)
    }
    fn y(&self, r: Root, s: &Q) -> Matrix<Q> {
        self.rep.y(self.idx(&r), s)
    }
    fn s(&self, r: Root) -> Matrix<Q> {
        self.rep.sdot(self.idx(&r))
    }
}

fn prod(ms: Vec<Matrix<Q>>) -> Matrix<Q> {
    let n = ms[0].dim();
    ms.into_iter().fold(Matrix::identity(n), |acc, m| acc.mul(&m))
}

/// Left- and right-hand sides of the group identity behind `tr`; the
/// right-hand side omits the trailing U₋ factor where there is one.
pub fn identity_sides(tr: TransformId, rep: &MatrixRep, i: usize, j: usize, t: &[Q]) -> Result<(Matrix<Q>, Matrix<Q>), BraidError> {
    check_roles(tr, &rep.spec, i, j)?;
    let o = apply(tr, t)?;
    let g = Roles { rep, i, j };
    use Root::{I, J};
    let (a, b) = (&t[0], &t[1]);
    let sides = match tr {
        C0 => (prod(vec![g.x(I, a), g.x(J, b)]), prod(vec![g.x(J, &o[0]), g.x(I, &o[1])])),
        C1 => (
            prod(vec![g.x(I, a), g.x(J, b), g.x(I, &t[2])]),
            prod(vec![g.x(J, &o[0]), g.x(I, &o[1]), g.x(J, &o[2])]),
        ),
        C2 => (
            prod(vec![g.x(I, a), g.x(J, b), g.s(I)]),
            prod(vec![g.x(J, &o[0]), g.s(I), g.x(J, &o[1]), g.y(I, &-a.clone())]),
        ),
        C3 => (
            prod(vec![g.x(J, a), g.x(I, b), g.x(J, &t[2]), g.x(I, &t[3])]),
            prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.x(I, &o[2]), g.x(J, &o[3])]),
        ),
        C4 => {
            let yarg = -(a.clone() * b.clone()) / (a.clone() + t[2].clone());
            (
                prod(vec![g.x(I, a), g.x(J, b), g.x(I, &t[2]), g.s(J)]),
                prod(vec![g.x(J, &o[0]), g.x(I, &o[1]), g.s(J), g.x(I, &o[2]), g.y(J, &yarg)]),
            )
        }
        C5 => (
            prod(vec![g.x(J, a), g.x(I, b), g.s(J), g.s(I)]),
            prod(vec![g.x(I, &o[0]), g.s(J), g.s(I), g.x(J, &o[1])]),
        ),
        C6 => {
            let c = &t[2];
            let s = a.clone() + c.clone();
            let yarg = -(a.clone() * a.clone() * b.clone() + Q::from_i64(2) * a.clone() * b.clone() * c.clone())
                / (s.clone() * s);
            (
                prod(vec![g.x(J, a), g.x(I, b), g.x(J, c), g.s(I)]),
                prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.s(I), g.x(J, &o[2]), g.y(I, &yarg)]),
            )
        }
        C7 => (
            prod(vec![g.x(I, a), g.x(J, b), g.s(I), g.s(J)]),
            prod(vec![g.x(J, &o[0]), g.s(I), g.s(J), g.x(I, &o[1])]),
        ),
        C8 => (
            prod(vec![g.x(I, a), g.x(J, b), g.x(I, &t[2]), g.x(J, &t[3]), g.x(I, &t[4]), g.x(J, &t[5])]),
            prod(vec![g.x(J, &o[0]), g.x(I, &o[1]), g.x(J, &o[2]), g.x(I, &o[3]), g.x(J, &o[4]), g.x(I, &o[5])]),
        ),
        C9 => (
            prod(vec![g.x(I, a), g.x(J, b), g.x(I, &t[2]), g.x(J, &t[3]), g.s(I), g.x(J, &t[4])]),
            prod(vec![g.x(J, &o[0]), g.x(I, &o[1]), g.x(J, &o[2]), g.x(I, &o[3]), g.x(J, &o[4]), g.s(I)]),
        ),
        C10 => (
            prod(vec![g.x(J, a), g.x(I, b), g.x(J, &t[2]), g.x(I, &t[3]), g.s(J), g.x(I, &t[4])]),
            prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.x(I, &o[2]), g.x(J, &o[3]), g.x(I, &o[4]), g.s(J)]),
        ),
        C11 => (
            prod(vec![g.x(J, a), g.x(I, b), g.x(J, &t[2]), g.x(I, &t[3]), g.s(J), g.s(I)]),
            prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.x(I, &o[2]), g.s(J), g.s(I), g.x(J, &o[3])]),
        ),
        C12 => (
            prod(vec![g.x(J, a), g.x(I, b), g.x(J, &t[2]), g.s(I), g.s(J), g.x(I, &t[3])]),
            prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.x(I, &o[2]), g.x(J, &o[3]), g.s(I), g.s(J)]),
        ),
        C13 => (
            prod(vec![g.x(J, a), g.x(I, b), g.x(J, &t[2]), g.s(I), g.s(J), g.s(I)]),
            prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.s(I), g.s(J), g.s(I), g.x(J, &o[2])]),
        ),
        C14 => (
            prod(vec![g.x(J, a), g.x(I, b), g.s(J), g.s(I), g.s(J), g.x(I, &t[2])]),
            prod(vec![g.x(I, &o[0]), g.x(J, &o[1]), g.x(I, &o[2]), g.s(J), g.s(I), g.s(J)]),
        ),
        C15 => (
            prod(vec![g.x(I, a), g.x(J, b), g.s(I), g.s(J), g.s(I), g.s(J)]),
            prod(vec![g.x(J, &o[0]), g.s(I), g.s(J), g.s(I), g.s(J), g.x(I, &o[1])]),
        ),
    };
    Ok(sides)
}

fn check_roles(tr: TransformId, spec: &CartanSpec, i: usize, j: usize) -> Result<(), BraidError> {
    if i == j {
        return Err(BraidError::Config(format!("{} needs distinct simple roots", tr.name())));
    }
    if i == 0 || j == 0 || i > spec.rank() || j > spec.rank() {
        return Err(BraidError::Config(format!("roots ({i}, {j}) out of range")));
    }
    if spec.bond(i, j) != tr.bond() {
        return Err(BraidError::Config(format!(
            "{} needs bond order {}, roots ({i}, {j}) have {}",
            tr.name(),
            tr.bond(),
            spec.bond(i, j)
        )));
    }
    if let Some(long) = tr.i_is_long() {
        if matches!(spec.label, CartanLabel::A(_)) || spec.is_long(i) != long {
            return Err(BraidError::Config(format!("{} needs root i {}", tr.name(), if long { "long" } else { "short" })));
        }
    }
    Ok(())
}

/// Basis of the Lie algebra of U₋: brackets of the `f_i`.
fn lower_nilradical(rep: &MatrixRep) -> Vec<Matrix<Q>> {
    let mut basis: Vec<Matrix<Q>> = Vec::new();
    let mut frontier: Vec<Matrix<Q>> = rep.f.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in frontier {
            if !in_span(&basis, &m) {
                basis.push(m.clone());
                for f in &rep.f {
                    next.push(f.commutator(&m));
                }
            }
        }
        frontier = next;
    }
    basis
}

fn in_span(basis: &[Matrix<Q>], m: &Matrix<Q>) -> bool {
    if m.is_zero_matrix() {
        return true;
    }
    let rows: Vec<Vec<Q>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    rank(rows.clone()) == rank(rows.into_iter().chain([m.entries().to_vec()]).collect())
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let f = rows[k][c].clone() / rows[r][c].clone();
                for cc in c..cols {
                    let sub = f.clone() * rows[r][cc].clone();
                    rows[k][cc] = rows[k][cc].clone() - sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// `u` is unit lower triangular and `log u` lies in the span of the
/// negative root vectors.
pub fn in_lower_unipotent(rep: &MatrixRep, u: &Matrix<Q>) -> bool {
    if !u.is_unit_lower_triangular() {
        return false;
    }
    let n = u.dim();
    let x = u.sub(&Matrix::identity(n));
    let mut log = Matrix::zeros(n);
    let mut pow = x.clone();
    for k in 1..n {
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        log = log.add(&pow.scale(&(sign / Q::from_i64(k as i64))));
        pow = pow.mul(&x);
    }
    in_span(&lower_nilradical(rep), &log)
}

/// Checks the group identity of `tr` exactly at `sample`, with the default
/// root roles for the representation.
pub fn verify_identity(tr: TransformId, rep: &MatrixRep, sample: &[Q]) -> Result<bool, BraidError> {
    let (i, j) = match rep.spec.label {
        CartanLabel::A(n) if tr.bond() == 2 => {
            if n < 3 {
                return Err(BraidError::Config("commuting roots need rank at least 3".into()));
            }
            (1, 3)
        }
        CartanLabel::A(_) => (1, 2),
        _ => tr.default_roles(),
    };
    verify_identity_with_roles(tr, rep, i, j, sample)
}

pub fn verify_identity_with_roles(tr: TransformId, rep: &MatrixRep, i: usize, j: usize, sample: &[Q]) -> Result<bool, BraidError> {
    let (lhs, rhs) = identity_sides(tr, rep, i, j, sample)?;
    if tr.up_to_lower_unipotent() {
        let u = rhs.inverse().expect("group element").mul(&lhs);
        Ok(in_lower_unipotent(rep, &u))
    } else {
        Ok(lhs == rhs)
    }
}

/// Returns `Jac·(t₁⋯tₘ)/(L¹⋯Lᵐ)` and its sign, computed exactly with dual
/// numbers.
pub fn jacobian_check(tr: TransformId, sample: &[Q]) -> Result<(Q, i8), BraidError> {
    let m = tr.arity();
    if sample.len() != m {
        return Err(BraidError::Arity { expected: m, got: sample.len() });
    }
    let vars: Vec<Dual<Q>> = sample.iter().enumerate().map(|(k, v)| Dual::var(v.clone(), k, m)).collect();
    let out = apply(tr, &vars)?;
    let jac = Matrix::from_fn(m, |r, c| out[r].partial(c));
    let num = sample.iter().fold(jac.det(), |acc, t| acc * t.clone());
    let den = out.iter().fold(Q::one(), |acc, l| acc * l.v.clone());
    if den.is_zero() {
        return Err(BraidError::Singular("product of image coordinates"));
    }
    let ratio = num / den;
    let sign = if ratio.is_negative() { -1 } else { 1 };
    Ok((ratio, sign))
}

/// One braid move between reduced words of w₀, with the composite of
/// C-transforms realizing the transition between the open charts for
/// `w_P`. The flag marks an inverse transform.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidStep {
    pub spec: CartanSpec,
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub parabolic: Vec<usize>,
    pub factors: Vec<(TransformId, bool)>,
}

/// Known rank-2 decompositions: A₂ with `P = B` or `w_P = s_k`, and B₂ with
/// `P = B`.
pub fn rank2_step(spec: &CartanSpec, from: &[usize], parabolic: &[usize]) -> Result<BraidStep, BraidError> {
    let start = 0;
    let (to, _) = braid_move(spec, from, start)
        .filter(|(_, m)| *m == from.len())
        .ok_or_else(|| BraidError::Config(format!("{from:?} is not a full rank-2 alternating word")))?;
    let factors = match (spec.label, parabolic) {
        (CartanLabel::A(2), []) => vec![(C1, false)],
        (CartanLabel::A(2), [k]) => vec![(C2, from[0] != *k)],
        (CartanLabel::B2, []) => vec![(C3, from[0] == 1)],
        _ => {
            return Err(BraidError::Config(format!(
                "chart transition for {:?} with w_P = {parabolic:?} is not tabulated",
                spec.label
            )))
        }
    };
    Ok(BraidStep { spec: spec.clone(), from: from.to_vec(), to, parabolic: parabolic.to_vec(), factors })
}

/// Product of the step signs along a path of braid moves.
pub fn transport_sign(path: &[BraidStep]) -> Result<i8, BraidError> {
    let mut sign = 1i8;
    for (k, step) in path.iter().enumerate() {
        let moved = (0..step.from.len()).any(|s| braid_move(&step.spec, &step.from, s).is_some_and(|(w, _)| w == step.to));
        if !moved {
            return Err(BraidError::Config(format!("step {k}: words are not related by one braid move")));
        }
        if let Some(next) = path.get(k + 1) {
            if next.from != step.to || next.parabolic != step.parabolic {
                return Err(BraidError::Config(format!("step {k}: endpoint does not match the next step")));
            }
        }
        for (tr, _) in &step.factors {
            sign *= tr.sign();
        }
    }
    Ok(sign)
}

/// Checks that the step's transforms carry standard coordinates on the
/// source chart to those on the target chart, by comparing cosets in G/B₋.
pub fn verify_transition(step: &BraidStep, sample: &[Q]) -> Result<bool, BraidError> {
    let rep = MatrixRep::for_spec(&step.spec);
    let cfg = |e: crate::deodhar::DeodharError| BraidError::Config(e.to_string());
    let wfrom = WeylWord::reduced(&step.spec, step.from.clone()).map_err(|e| BraidError::Config(e.to_string()))?;
    let wto = WeylWord::reduced(&step.spec, step.to.clone()).map_err(|e| BraidError::Config(e.to_string()))?;
    let src = deodhar::open_stratum(&rep, &wfrom, &step.parabolic).map_err(cfg)?;
    let dst = deodhar::open_stratum(&rep, &wto, &step.parabolic).map_err(cfg)?;
    let mut coords = sample.to_vec();
    for (tr, inverse) in &step.factors {
        coords = if *inverse { apply_inverse(*tr, &coords)? } else { apply(*tr, &coords)? };
    }
    let g = deodhar::chart_point(&src, sample).map_err(cfg)?;
    let h = deodhar::chart_point(&dst, &coords).map_err(cfg)?;
    Ok(deodhar::coset_normal_form(&g) == deodhar::coset_normal_form(&h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn closed_form_examples() {
        assert_eq!(apply(C0, &[qi(2), qi(5)]).unwrap(), vec![qi(5), qi(2)]);
        assert_eq!(apply(C1, &[qi(1), qi(1), qi(1)]).unwrap(), vec![q(1, 2), qi(2), q(1, 2)]);
        assert_eq!(apply(C2, &[qi(2), qi(3)]).unwrap(), vec![qi(3), qi(6)]);
    }

    #[test]
    fn singular_inputs_are_named() {
        assert_eq!(apply(C1, &[qi(1), qi(2), qi(-1)]), Err(BraidError::Singular("a+c")));
        assert!(matches!(apply(C3, &[qi(1)]), Err(BraidError::Arity { .. })));
    }

    #[test]
    fn identities_small_samples() {
        assert!(verify_identity(C1, &MatrixRep::type_a(2), &[qi(1), qi(2), qi(3)]).unwrap());
        assert!(verify_identity(C2, &MatrixRep::type_a(2), &[qi(2), qi(3)]).unwrap());
        assert!(verify_identity(C3, &MatrixRep::b2(), &[q(1, 2), qi(3), q(2, 7), qi(5)]).unwrap());
    }

    #[test]
    fn every_transform_on_one_sample() {
        for tr in TransformId::ALL {
            let sample: Vec<Q> = (0..tr.arity()).map(|k| q(k as i64 + 2, 2 * k as i64 + 3)).collect();
            assert!(verify_identity(tr, &tr.default_rep(), &sample).unwrap(), "{}", tr.name());
            let (ratio, sign) = jacobian_check(tr, &sample).unwrap();
            assert_eq!((ratio, sign), (Q::from_i64(tr.sign() as i64), tr.sign()), "{}", tr.name());
        }
    }

    #[test]
    fn equal_roots_rejected() {
        let err = verify_identity_with_roles(C1, &MatrixRep::type_a(2), 1, 1, &[qi(1), qi(2), qi(3)]).unwrap_err();
        assert!(matches!(err, BraidError::Config(_)));
        let err = verify_identity_with_roles(C3, &MatrixRep::b2(), 2, 1, &[qi(1), qi(2), qi(3), qi(4)]).unwrap_err();
        assert!(matches!(err, BraidError::Config(_)));
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_check(C1, &[qi(1), qi(1), qi(1)]).unwrap(), (qi(1), 1));
        assert_eq!(jacobian_check(C0, &[qi(2), qi(5)]).unwrap(), (qi(-1), -1));
    }

    #[test]
    fn c3_inverse_roundtrip() {
        let t = vec![q(3, 2), qi(7), q(1, 5), qi(2)];
        let back = apply_inverse(C3, &apply(C3, &t).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn transport_examples() {
        assert_eq!(transport_sign(&[]).unwrap(), 1);
        let a2 = CartanSpec::a(2);
        let there = rank2_step(&a2, &[1, 2, 1], &[]).unwrap();
        let back = rank2_step(&a2, &[2, 1, 2], &[]).unwrap();
        assert_eq!(transport_sign(&[there.clone(), back]).unwrap(), 1);
        let b2 = rank2_step(&CartanSpec::b2(), &[2, 1, 2, 1], &[]).unwrap();
        assert_eq!(transport_sign(&[b2]).unwrap(), -1);
        let bad = BraidStep { to: vec![1, 2, 1], ..there };
        assert!(transport_sign(&[bad]).is_err());
    }

    #[test]
    fn rank2_transitions_match_charts() {
        let a2 = CartanSpec::a(2);
        let cases: Vec<(CartanSpec, Vec<usize>, Vec<usize>, Vec<Q>)> = vec![
            (a2.clone(), vec![1, 2, 1], vec![], vec![qi(2), q(1, 3), qi(5)]),
            (a2.clone(), vec![2, 1, 2], vec![], vec![q(7, 2), qi(1), qi(4)]),
            (a2.clone(), vec![1, 2, 1], vec![1], vec![qi(3), q(2, 5)]),
            (a2.clone(), vec![2, 1, 2], vec![1], vec![qi(3), q(2, 5)]),
            (a2.clone(), vec![2, 1, 2], vec![2], vec![q(1, 4), qi(6)]),
            (a2, vec![1, 2, 1], vec![2], vec![q(1, 4), qi(6)]),
            (CartanSpec::b2(), vec![2, 1, 2, 1], vec![], vec![qi(1), q(3, 2), qi(2), q(5, 7)]),
            (CartanSpec::b2(), vec![1, 2, 1, 2], vec![], vec![qi(4), q(1, 2), qi(3), qi(2)]),
        ];
        for (spec, from, wp, sample) in cases {
            let step = rank2_step(&spec, &from, &wp).unwrap();
            assert!(verify_transition(&step, &sample).unwrap(), "{from:?} w_P = {wp:?}");
        }
        assert!(rank2_step(&CartanSpec::g2(), &[1, 2, 1, 2, 1, 2], &[]).is_err());
    }
}
