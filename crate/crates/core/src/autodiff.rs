//! Forward-mode differentiation.
//!
//! [`Dual`] carries a value and its gradient; [`Jet2`] additionally carries
//! the Hessian. Both are generic over the coefficient field, so the same
//! matrix code differentiates exactly over rationals or numerically over
//! complex floats. Constants are stored with empty derivative vectors.

use crate::scalar::{Scalar, C, Q};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub v: S,
    pub d: Vec<S>,
}

impl<S: Scalar> Dual<S> {
    pub fn constant(v: S) -> Self {
        Dual { v, d: Vec::new() }
    }

    /// The `k`-th of `n` independent variables.
    pub fn var(v: S, k: usize, n: usize) -> Self {
        let mut d = vec![S::zero(); n];
        d[k] = S::one();
        Dual { v, d }
    }

    pub fn partial(&self, k: usize) -> S {
        self.d.get(k).cloned().unwrap_or_else(S::zero)
    }
}

fn zip_with<S: Scalar>(a: &[S], b: &[S], f: impl Fn(S, S) -> S) -> Vec<S> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(S::zero);
            let y = b.get(k).cloned().unwrap_or_else(S::zero);
            f(x, y)
        })
        .collect()
}

fn scaled<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { v: self.v + o.v, d: zip_with(&self.d, &o.d, |x, y| x + y) }
    }
}
impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { v: self.v - o.v, d: zip_with(&self.d, &o.d, |x, y| x - y) }
    }
}
impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = zip_with(&scaled(&self.d, &o.v), &scaled(&o.d, &self.v), |x, y| x + y);
        Dual { v: self.v * o.v, d }
    }
}
impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.v.recip();
        let inv2 = inv.clone() * inv.clone();
        // (a/b)' = a'/b - a b'/b^2
        let d = zip_with(&scaled(&self.d, &inv), &scaled(&o.d, &(self.v.clone() * inv2)), |x, y| x - y);
        Dual { v: self.v * inv, d }
    }
}
impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { v: -self.v, d: self.d.into_iter().map(|x| -x).collect() }
    }
}
impl<S: Scalar> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.iter().all(|x| x.is_zero())
    }
}
impl<S: Scalar> One for Dual<S> {
    fn one() -> Self {
        Dual::constant(S::one())
    }
}
impl<S: Scalar> Scalar for Dual<S> {
    fn from_i64(v: i64) -> Self {
        Dual::constant(S::from_i64(v))
    }
    fn from_q(v: &Q) -> Self {
        Dual::constant(S::from_q(v))
    }
    fn magnitude(&self) -> f64 {
        self.v.magnitude()
    }
    fn is_exact() -> bool {
        S::is_exact()
    }
}

/// Second-order jet: value, gradient and symmetric Hessian (row-major,
/// `n × n`).
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<S> {
    pub v: S,
    pub g: Vec<S>,
    pub h: Vec<S>,
}

impl<S: Scalar> Jet2<S> {
    pub fn constant(v: S) -> Self {
        Jet2 { v, g: Vec::new(), h: Vec::new() }
    }

    pub fn var(v: S, k: usize, n: usize) -> Self {
        let mut g = vec![S::zero(); n];
        g[k] = S::one();
        Jet2 { v, g, h: vec![S::zero(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn hess(&self, a: usize, b: usize) -> S {
        let n = self.g.len();
        if n == 0 {
            S::zero()
        } else {
            self.h[a * n + b].clone()
        }
    }

    fn padded(&self, n: usize) -> (Vec<S>, Vec<S>) {
        let mut g = self.g.clone();
        g.resize(n, S::zero());
        let h = if self.h.len() == n * n { self.h.clone() } else { vec![S::zero(); n * n] };
        (g, h)
    }

    fn repad(&self, n: usize) -> Self {
        let (g, h) = self.padded(n);
        Jet2 { v: self.v.clone(), g, h }
    }

    /// Chain rule for a unary function with derivatives `f1`, `f2` at the value.
    pub fn chain(&self, f0: S, f1: S, f2: S) -> Self {
        let n = self.g.len();
        let g: Vec<S> = self.g.iter().map(|x| x.clone() * f1.clone()).collect();
        let mut h = vec![S::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                h[a * n + b] = f1.clone() * self.h[a * n + b].clone()
                    + f2.clone() * self.g[a].clone() * self.g[b].clone();
            }
        }
        Jet2 { v: f0, g, h }
    }
}

impl Jet2<C> {
    pub fn exp(&self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    /// Principal-branch logarithm; derivatives are branch-free.
    pub fn ln(&self) -> Self {
        let r = self.v.recip();
        self.chain(self.v.ln(), r, -(r * r))
    }
}

impl<S: Scalar> Add for Jet2<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        combine(self, o, |x, y| x + y)
    }
}
/// Entrywise `op` for `op` linear in each argument with `op(x, 0) = x`.
fn combine<S: Scalar>(mut a: Jet2<S>, b: Jet2<S>, op: impl Fn(S, S) -> S) -> Jet2<S> {
    if b.g.is_empty() {
        a.v = op(a.v, b.v);
        return a;
    }
    let n = a.g.len().max(b.g.len());
    if a.g.len() != n || a.h.len() != n * n {
        let (g, h) = a.padded(n);
        a.g = g;
        a.h = h;
    }
    let (g2, h2) = if b.g.len() == n && b.h.len() == n * n { (b.g, b.h) } else { b.padded(n) };
    a.v = op(a.v, b.v);
    for (x, y) in a.g.iter_mut().zip(g2) {
        *x = op(x.clone(), y);
    }
    for (x, y) in a.h.iter_mut().zip(h2) {
        *x = op(x.clone(), y);
    }
    a
}
impl<S: Scalar> Neg for Jet2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet2 {
            v: -self.v,
            g: self.g.into_iter().map(|x| -x).collect(),
            h: self.h.into_iter().map(|x| -x).collect(),
        }
    }
}
impl<S: Scalar> Sub for Jet2<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        combine(self, o, |x, y| x - y)
    }
}
impl<S: Scalar> Mul for Jet2<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let n = self.g.len().max(o.g.len());
        if n == 0 {
            return Jet2::constant(self.v * o.v);
        }
        if o.g.is_empty() {
            return Jet2 {
                v: self.v * o.v.clone(),
                g: self.g.into_iter().map(|x| x * o.v.clone()).collect(),
                h: self.h.into_iter().map(|x| x * o.v.clone()).collect(),
            };
        }
        if self.g.is_empty() {
            return o * self;
        }
        let (g1, h1) = if self.g.len() == n && self.h.len() == n * n { (&self.g, &self.h) } else { return self.repad(n) * o };
        let (g2, h2) = if o.g.len() == n && o.h.len() == n * n { (&o.g, &o.h) } else { return self * o.repad(n) };
        let mut g = Vec::with_capacity(n);
        for k in 0..n {
            g.push(self.v.clone() * g2[k].clone() + o.v.clone() * g1[k].clone());
        }
        let mut h = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                h.push(
                    self.v.clone() * h2[a * n + b].clone()
                        + o.v.clone() * h1[a * n + b].clone()
                        + g1[a].clone() * g2[b].clone()
                        + g2[a].clone() * g1[b].clone(),
                );
            }
        }
        Jet2 { v: self.v * o.v, g, h }
    }
}
impl<S: Scalar> Div for Jet2<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        if o.g.is_empty() {
            let r = o.v.recip();
            return Jet2 {
                v: self.v * r.clone(),
                g: self.g.into_iter().map(|x| x * r.clone()).collect(),
                h: self.h.into_iter().map(|x| x * r.clone()).collect(),
            };
        }
        let r = o.v.recip();
        let r2 = r.clone() * r.clone();
        let inv = o.chain(r.clone(), -r2.clone(), S::from_i64(2) * r2 * r);
        self * inv
    }
}
impl<S: Scalar> Zero for Jet2<S> {
    fn zero() -> Self {
        Jet2::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.g.iter().all(|x| x.is_zero()) && self.h.iter().all(|x| x.is_zero())
    }
}
impl<S: Scalar> One for Jet2<S> {
    fn one() -> Self {
        Jet2::constant(S::one())
    }
}
impl<S: Scalar> Scalar for Jet2<S> {
    fn from_i64(v: i64) -> Self {
        Jet2::constant(S::from_i64(v))
    }
    fn from_q(v: &Q) -> Self {
        Jet2::constant(S::from_q(v))
    }
    fn magnitude(&self) -> f64 {
        self.v.magnitude()
    }
    fn is_exact() -> bool {
        S::is_exact()
    }
}
