//! The family `Z_P`: canonical factorization `b = u₁ t ẇ_P ẇ₀⁻¹ u₂⁻¹`, the
//! phase function `F_P(b) = F(u₂·ρ) − F(u₁·ρ)`, and the symmetry
//! `b ↦ b⁻¹` exchanging `P` with its opposite parabolic.

use super::quiver::w0_inverse;
use super::MirrorError;
use crate::chevalley::MatrixRep;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::weyl::{longest_parabolic_word, longest_word, permutation_of};

/// A type-A parabolic, given by the simple roots of its Levi factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    pub n: usize,
    pub levi: Vec<usize>,
}

impl Parabolic {
    pub fn new(n: usize, mut levi: Vec<usize>) -> Result<Self, MirrorError> {
        levi.sort_unstable();
        levi.dedup();
        if n < 1 || levi.iter().any(|&i| i == 0 || i > n) {
            return Err(MirrorError::Domain(format!("bad parabolic {levi:?} for n = {n}")));
        }
        Ok(Parabolic { n, levi })
    }

    pub fn borel(n: usize) -> Self {
        Parabolic { n, levi: Vec::new() }
    }

    pub fn rep(&self) -> MatrixRep {
        MatrixRep::type_a(self.n)
    }

    /// Reduced word of the longest element `w_P` of `W_P`.
    pub fn wp_word(&self) -> Vec<usize> {
        longest_parabolic_word(&crate::weyl::CartanSpec::a(self.n), &self.levi)
    }

    pub fn wp<S: Scalar>(&self) -> Matrix<S> {
        self.rep().weyl_rep(&self.wp_word())
    }

    /// `w̄ = ẇ_P ẇ₀⁻¹`.
    pub fn wbar<S: Scalar>(&self) -> Matrix<S> {
        let rep = self.rep();
        rep.weyl_rep(&self.wp_word()).mul(&w0_inverse(&rep))
    }

    /// `Q` with `W_Q = w₀ W_P w₀⁻¹`.
    pub fn opposite(&self) -> Self {
        Parabolic::new(self.n, self.levi.iter().map(|&i| self.n + 1 - i).collect()).expect("valid")
    }

    /// Simple roots outside the Levi factor.
    pub fn marked(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.levi.contains(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BorelFactorization<S> {
    pub u1: Matrix<S>,
    /// Diagonal of the torus factor.
    pub t: Vec<S>,
    pub u2: Matrix<S>,
    pub parabolic: Parabolic,
}

impl<S: Scalar> BorelFactorization<S> {
    pub fn reconstruct(&self) -> Matrix<S> {
        let u2inv = self.u2.inverse().expect("unipotent");
        self.u1.mul(&Matrix::diag(&self.t)).mul(&self.parabolic.wbar()).mul(&u2inv)
    }

    /// `α_i(t) = t_i / t_{i+1}`.
    pub fn alpha(&self, i: usize) -> S {
        self.t[i - 1].clone() / self.t[i].clone()
    }
}

/// Canonical factorization with `u₁ ∈ U₊ ∩ w̄U₋w̄⁻¹` and `t` fixed by `W_P`.
pub fn factorize_borel<S: Scalar>(b: &Matrix<S>, p: &Parabolic) -> Result<BorelFactorization<S>, MirrorError> {
    let fact = factorize_bruhat(b, p)?;
    for &i in &p.levi {
        let a = fact.alpha(i);
        if !(a - S::one()).is_negligible(1.0) {
            return Err(MirrorError::NotInOpenSet(format!("torus part is not fixed by s_{i}")));
        }
    }
    Ok(fact)
}

/// The same elimination without the condition on `t`, i.e. membership in
/// `U₊ T w̄ U₊`. Columns are processed left to right: the pivot is the lowest
/// unused nonzero entry, rows above it are cleared from the left by U₊ and
/// the pivot row is cleared to the right by U₊. Row operations only reach
/// rows whose pivots come later, which is the normalization of `u₁`.
pub fn factorize_bruhat<S: Scalar>(b: &Matrix<S>, p: &Parabolic) -> Result<BorelFactorization<S>, MirrorError> {
    let d = b.dim();
    if d != p.n + 1 {
        return Err(MirrorError::Domain(format!("matrix of size {d} for rank {}", p.n)));
    }
    let scale = b.max_abs();
    let mut m = b.clone();
    let mut u1 = Matrix::<S>::identity(d);
    let mut u2 = Matrix::<S>::identity(d);
    let mut used = vec![false; d];
    let mut perm = vec![0; d];
    for c in 0..d {
        let Some(r) = (0..d).rev().find(|&r| !used[r] && !m[(r, c)].is_negligible(scale)) else {
            return Err(MirrorError::NotInOpenSet(format!("column {} has no pivot", c + 1)));
        };
        used[r] = true;
        perm[c] = r;
        let inv = m[(r, c)].recip();
        for rr in 0..r {
            if used[rr] {
                m[(rr, c)] = S::zero();
                continue;
            }
            let f = m[(rr, c)].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for cc in 0..d {
                m[(rr, cc)] = m[(rr, cc)].clone() - f.clone() * m[(r, cc)].clone();
            }
            // u₁ ← u₁ (1 + f E_{rr,r})
            for k in 0..d {
                u1[(k, r)] = u1[(k, r)].clone() + f.clone() * u1[(k, rr)].clone();
            }
        }
        for cc in c + 1..d {
            let f = m[(r, cc)].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..d {
                m[(k, cc)] = m[(k, cc)].clone() - f.clone() * m[(k, c)].clone();
            }
            // u₂ ← u₂ (1 − f E_{c,cc})
            for k in 0..d {
                u2[(k, cc)] = u2[(k, cc)].clone() - f.clone() * u2[(k, c)].clone();
            }
        }
    }
    let wbar: Matrix<S> = p.wbar();
    let mut t = vec![S::zero(); d];
    for c in 0..d {
        let r = perm[c];
        if wbar[(r, c)].is_zero() {
            return Err(MirrorError::NotInOpenSet("Bruhat cell differs from that of w_P w_0^-1".into()));
        }
        t[r] = m[(r, c)].clone() / wbar[(r, c)].clone();
    }
    Ok(BorelFactorization { u1, t, u2, parabolic: p.clone() })
}

/// `F(X)`: the sum of the superdiagonal entries.
pub fn f_eval<S: Scalar>(x: &Matrix<S>) -> S {
    (0..x.dim() - 1).fold(S::zero(), |acc, i| acc + x[(i, i + 1)].clone())
}

/// `F(u·ρ) = F(u ρ u⁻¹)` with `ρ = diag(n, …, 0)`.
pub fn f_of_conjugated_rho<S: Scalar>(u: &Matrix<S>) -> S {
    let n = u.dim();
    let rho = Matrix::diag(&(0..n).map(|k| S::from_i64((n - 1 - k) as i64)).collect::<Vec<_>>());
    let inv = u.inverse().expect("unipotent");
    f_eval(&u.mul(&rho).mul(&inv))
}

pub fn phase_from_factorization<S: Scalar>(fact: &BorelFactorization<S>) -> S {
    f_of_conjugated_rho(&fact.u2) - f_of_conjugated_rho(&fact.u1)
}

/// `F_P(b) = F(u₂·ρ) − F(u₁·ρ)`.
pub fn phase_fp<S: Scalar>(b: &Matrix<S>, p: &Parabolic) -> Result<S, MirrorError> {
    Ok(phase_from_factorization(&factorize_borel(b, p)?))
}

/// `σ_P(t, b) = (ẇ₀ t⁻¹ ẇ₀⁻¹ ε, b⁻¹)` with `ε = (ẇ_Q ẇ_Q)⁻¹`; returns `Q`
/// and the image point.
pub fn symmetry_map<S: Scalar>(p: &Parabolic, t: &[S], b: &Matrix<S>) -> Result<(Parabolic, Vec<S>, Matrix<S>), MirrorError> {
    let q = p.opposite();
    let rep = p.rep();
    let w0: Matrix<S> = rep.weyl_rep(&longest_word(&rep.spec));
    let w0inv = w0_inverse::<S>(&rep);
    let tinv: Vec<S> = t.iter().map(|x| x.recip()).collect();
    let conj = w0.mul(&Matrix::diag(&tinv)).mul(&w0inv);
    let wq: Matrix<S> = q.wp();
    let eps = wq.mul(&wq).inverse().expect("torus element");
    let image = conj.mul(&eps);
    if !image.is_diagonal() {
        return Err(MirrorError::Invariant("symmetry image of the torus is not diagonal".into()));
    }
    let binv = b.inverse().ok_or_else(|| MirrorError::Domain("b is singular".into()))?;
    Ok((q, (0..t.len()).map(|k| image[(k, k)].clone()).collect(), binv))
}

/// Permutation of `w̄`, as in [`permutation_of`].
pub fn wbar_permutation(p: &Parabolic) -> Vec<usize> {
    let mut letters = p.wp_word();
    letters.extend(longest_word(&crate::weyl::CartanSpec::a(p.n)).iter().rev());
    permutation_of(p.n, &letters)
}

/// Positions `(r, c)`, `r < c`, free in `U₊ ∩ w̄U₋w̄⁻¹`: those with
/// `w̄⁻¹(r) > w̄⁻¹(c)`.
pub fn unipotent_positions(p: &Parabolic) -> Vec<(usize, usize)> {
    let perm = wbar_permutation(p);
    let d = p.n + 1;
    let mut inv = vec![0; d];
    for (c, &r) in perm.iter().enumerate() {
        inv[r] = c;
    }
    (0..d).flat_map(|r| (r + 1..d).map(move |c| (r, c))).filter(|&(r, c)| inv[r] > inv[c]).collect()
}

/// The fiber point with canonical factors `u₁` and `t`: writing
/// `u₁ t w̄ = L U` with `L` unit lower and `U` upper triangular,
/// `b = L·diag(U)`.
pub fn fiber_point<S: Scalar>(p: &Parabolic, t: &[S], u1: &Matrix<S>) -> Result<Matrix<S>, MirrorError> {
    let m = u1.mul(&Matrix::diag(t)).mul(&p.wbar());
    let (l, u) = m.lu().ok_or_else(|| MirrorError::NotInOpenSet("u1 t w is outside the big cell".into()))?;
    Ok(Matrix::from_fn(m.dim(), |r, c| l[(r, c)].clone() * u[(c, c)].clone()))
}
