//! Dense square matrices over any [`Scalar`].

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.n {
            writeln!(f, "  {:?}", &self.data[r * self.n..(r + 1) * self.n])?;
        }
        write!(f, "]")
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.n + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.n + c]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![S::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn diag(d: &[S]) -> Self {
        Self::from_fn(d.len(), |r, c| if r == c { d[r].clone() } else { S::zero() })
    }

    /// Elementary matrix E_{r,c} (0-based).
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(r, c)] = S::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &o.data[k * n + c];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.clone() * b.clone();
                    let slot = &mut out.data[r * n + c];
                    *slot = slot.clone() + t;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        Matrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Matrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].clone())
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, k| acc + self[(k, k)].clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Entries strictly above the diagonal are exactly zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|c| self[(r, c)].is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.transpose().is_lower_triangular()
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        self.is_lower_triangular() && (0..self.n).all(|k| self[(k, k)] == S::one())
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.is_upper_triangular() && (0..self.n).all(|k| self[(k, k)] == S::one())
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = if S::is_exact() {
                (col..n).find(|&r| !a[(r, col)].is_zero())?
            } else {
                let r = (col..n)
                    .max_by(|&x, &y| a[(x, col)].magnitude().total_cmp(&a[(y, col)].magnitude()))?;
                if a[(r, col)].is_zero() {
                    return None;
                }
                r
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].recip();
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() * p.clone();
                inv[(col, c)] = inv[(col, c)].clone() * p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    a[(r, c)] = a[(r, c)].clone() - f.clone() * a[(col, c)].clone();
                    inv[(r, c)] = inv[(r, c)].clone() - f.clone() * inv[(col, c)].clone();
                }
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    pub fn det(&self) -> S {
        let n = self.n;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = if S::is_exact() {
                match (col..n).find(|&r| !a[(r, col)].is_zero()) {
                    Some(r) => r,
                    None => return S::zero(),
                }
            } else {
                (col..n)
                    .max_by(|&x, &y| a[(x, col)].magnitude().total_cmp(&a[(y, col)].magnitude()))
                    .unwrap()
            };
            if a[(pivot, col)].is_zero() {
                return S::zero();
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            let pinv = p.recip();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone() * pinv.clone();
                for c in col..n {
                    a[(r, c)] = a[(r, c)].clone() - f.clone() * a[(col, c)].clone();
                }
            }
        }
        det
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> S {
        let k = rows.len();
        assert_eq!(k, cols.len());
        if k == 0 {
            return S::one();
        }
        Matrix::from_fn(k, |r, c| self[(rows[r], cols[c])].clone()).det()
    }

    /// Coefficients `[c_1, …, c_n]` of `det(xI − A) = xⁿ + c_1 xⁿ⁻¹ + … + c_n`
    /// (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Vec<S> {
        let n = self.n;
        let mut coeffs = Vec::with_capacity(n);
        let mut m = Self::zeros(n);
        let mut c_prev = S::one();
        for k in 1..=n {
            m = self.mul(&m).add(&Self::identity(n).scale(&c_prev));
            let c = -(self.mul(&m).trace() / S::from_i64(k as i64));
            coeffs.push(c.clone());
            c_prev = c;
        }
        coeffs
    }

    /// Lower-upper factorization without pivoting: `self = L·U` with `L`
    /// unit lower triangular. `None` if a leading principal minor vanishes.
    pub fn lu(&self) -> Option<(Self, Self)> {
        let n = self.n;
        let mut u = self.clone();
        let mut l = Self::identity(n);
        let scale = self.max_abs();
        for col in 0..n {
            if u[(col, col)].is_negligible(scale) {
                return None;
            }
            let pinv = u[(col, col)].recip();
            for r in col + 1..n {
                let f = u[(r, col)].clone() * pinv.clone();
                l[(r, col)] = f.clone();
                for c in col..n {
                    u[(r, c)] = u[(r, c)].clone() - f.clone() * u[(col, c)].clone();
                }
                u[(r, col)] = S::zero();
            }
        }
        Some((l, u))
    }

    /// `true` if `self = λ·other` for some nonzero scalar λ.
    pub fn eq_projective(&self, other: &Self) -> bool {
        let Some(k) = (0..self.data.len()).find(|&k| !other.data[k].is_zero()) else {
            return false;
        };
        if self.data[k].is_zero() {
            return false;
        }
        let lam = self.data[k].clone() / other.data[k].clone();
        if S::is_exact() {
            self.data.iter().zip(&other.data).all(|(a, b)| *a == lam.clone() * b.clone())
        } else {
            let scale = self.max_abs();
            self.data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - lam.clone() * b.clone()).magnitude() <= 1e-9 * scale.max(1.0))
        }
    }
}
