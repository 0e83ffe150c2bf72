//! Peterson and Toda checks for type A: the functional `F − h` as the matrix
//! `M = Σ E_{i+1,i} − h` under the trace pairing, its stabilizer, the
//! μ-image, conserved quantities and the quantum parameters.
//!
//! Under `⟨X, Y⟩ = tr(XY)` a functional vanishes on `[𝔲₋, 𝔲₋]` exactly when
//! its matrix has zeros at `(r, c)` with `c ≥ r + 2`, and its value on `f_i`
//! is the entry `(i, i + 1)`.

use crate::matrix::Matrix;
use crate::mirror::borel::BorelFactorization;
use crate::scalar::Scalar;

/// `M = Σ_i E_{i+1,i} − diag(h)`.
pub fn f_matrix<S: Scalar>(n: usize, h: &[S]) -> Matrix<S> {
    assert_eq!(h.len(), n + 1);
    Matrix::from_fn(n + 1, |r, c| {
        if r == c + 1 {
            S::one()
        } else if r == c {
            -h[r].clone()
        } else {
            S::zero()
        }
    })
}

fn tolerance_ok<S: Scalar>(residual: f64, tol: f64, exact_zero: bool) -> bool {
    if S::is_exact() && tol == 0.0 {
        exact_zero
    } else {
        residual <= tol
    }
}

/// `max |b M b⁻¹ − M|`, and whether it is within `tol` relative to `M`.
pub fn stabilizer_check<S: Scalar>(b: &Matrix<S>, h: &[S], tol: f64) -> (bool, f64) {
    let m = f_matrix(b.dim() - 1, h);
    let Some(binv) = b.inverse() else {
        return (false, f64::INFINITY);
    };
    let diff = b.mul(&m).mul(&binv).sub(&m);
    let residual = diff.max_abs();
    let scale = m.max_abs().max(1.0);
    (tolerance_ok::<S>(residual, tol * scale, diff.is_zero_matrix()), residual)
}

/// `ẇ_P⁻¹ u₁⁻¹ M u₁ ẇ_P`.
pub fn mu_image<S: Scalar>(fact: &BorelFactorization<S>, h: &[S]) -> Matrix<S> {
    let m = f_matrix(fact.parabolic.n, h);
    let g = fact.u1.mul(&fact.parabolic.wp());
    g.inverse().expect("invertible").mul(&m).mul(&g)
}

/// Coefficients of the characteristic polynomial, highest degree omitted.
pub fn conserved_quantities<S: Scalar>(a: &Matrix<S>) -> Vec<S> {
    a.char_poly()
}

/// Coefficients of `∏ (x + λ_i)` in the same layout as
/// [`conserved_quantities`].
pub fn expected_conserved<S: Scalar>(lambda: &[S]) -> Vec<S> {
    let mut poly = vec![S::one()];
    for l in lambda {
        let mut next = vec![S::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k] = next[k].clone() + c.clone();
            next[k + 1] = next[k + 1].clone() + c.clone() * l.clone();
        }
        poly = next;
    }
    poly.split_off(1)
}

/// `q_j = −(F − h)(u₁ ẇ_P · f_{n_j})` over the marked roots `n_j`.
pub fn quantum_params<S: Scalar>(fact: &BorelFactorization<S>, h: &[S]) -> Vec<S> {
    let a = mu_image(fact, h);
    fact.parabolic.marked().iter().map(|&i| -a[(i - 1, i)].clone()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalLocusReport {
    /// Largest entry of the μ-image at `(r, c)` with `c ≥ r + 2`.
    pub vanishing_residual: f64,
    /// Largest `|(F − h)(u₁ẇ_P·f_i) + α_i(t)|` over the marked roots.
    pub root_residual: f64,
    pub passed: bool,
}

/// Both conditions cutting out the critical locus.
pub fn critical_locus_check<S: Scalar>(fact: &BorelFactorization<S>, h: &[S], tol: f64) -> CriticalLocusReport {
    let a = mu_image(fact, h);
    let d = a.dim();
    let mut exact_zero = true;
    let mut vanishing: f64 = 0.0;
    for r in 0..d {
        for c in r + 2..d {
            vanishing = vanishing.max(a[(r, c)].magnitude());
            exact_zero &= a[(r, c)].is_zero();
        }
    }
    let mut root: f64 = 0.0;
    for i in fact.parabolic.marked() {
        let e = a[(i - 1, i)].clone() + fact.alpha(i);
        root = root.max(e.magnitude());
        exact_zero &= e.is_zero();
    }
    let scale = a.max_abs().max(1.0);
    let passed = tolerance_ok::<S>(vanishing.max(root), tol * scale, exact_zero);
    CriticalLocusReport { vanishing_residual: vanishing, root_residual: root, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::MatrixRep;
    use crate::mirror::borel::{factorize_borel, Parabolic};
    use crate::scalar::{qi, C, Q};

    fn fact_with_u1(n: usize, u1: Matrix<Q>) -> BorelFactorization<Q> {
        BorelFactorization { u1, t: vec![qi(1); n + 1], u2: Matrix::identity(n + 1), parabolic: Parabolic::borel(n) }
    }

    #[test]
    fn f_matrix_examples() {
        let m = f_matrix(2, &[qi(0), qi(0), qi(0)]);
        assert_eq!(m, Matrix::unit(3, 1, 0).add(&Matrix::unit(3, 2, 1)));
        let m = f_matrix(1, &[qi(3), qi(-3)]);
        assert_eq!(m, Matrix::from_rows(vec![vec![qi(-3), qi(0)], vec![qi(1), qi(3)]]));
        let rep = MatrixRep::type_a(2);
        for i in 0..2 {
            let e: Matrix<Q> = rep.e[i].clone();
            assert_eq!(m_pair(&f_matrix(2, &vec![qi(0); 3]), &e), qi(1));
        }
    }

    fn m_pair(m: &Matrix<Q>, e: &Matrix<Q>) -> Q {
        m.mul(e).trace()
    }

    #[test]
    fn stabilizer_examples() {
        let h = [qi(0), qi(0)];
        let b = Matrix::from_rows(vec![vec![qi(1), qi(0)], vec![qi(1), qi(1)]]);
        assert_eq!(stabilizer_check(&b, &h, 0.0), (true, 0.0));
        let b = Matrix::from_rows(vec![vec![qi(2), qi(0)], vec![qi(1), qi(1)]]);
        let (ok, r) = stabilizer_check(&b, &h, 0.0);
        assert!(!ok && r > 0.0);
    }

    #[test]
    fn mu_image_examples() {
        let rep = MatrixRep::type_a(1);
        let f = fact_with_u1(1, rep.x(1, &qi(1)));
        let a = mu_image(&f, &[qi(0), qi(0)]);
        assert_eq!(a, Matrix::from_rows(vec![vec![qi(-1), qi(-1)], vec![qi(1), qi(1)]]));
        assert_eq!(conserved_quantities(&a), vec![qi(0), qi(0)]);
        assert_eq!(quantum_params(&f, &[qi(0), qi(0)]), vec![qi(1)]);
        let f = fact_with_u1(3, Matrix::identity(4));
        let a = mu_image(&f, &vec![qi(0); 4]);
        assert_eq!(a, f_matrix(3, &vec![qi(0); 4]));
        assert_eq!(quantum_params(&f, &vec![qi(0); 4]), vec![qi(0); 3]);
    }

    #[test]
    fn equivariant_n1_critical_point() {
        let s = 2f64.sqrt() - 1.0;
        let b = Matrix::from_rows(vec![vec![C::new(s, 0.0), C::new(0.0, 0.0)], vec![C::new(1.0, 0.0), C::new(1.0 / s, 0.0)]]);
        let h = [C::new(1.0, 0.0), C::new(-1.0, 0.0)];
        let fact = factorize_borel(&b, &Parabolic::borel(1)).unwrap();
        let a = mu_image(&fact, &h);
        assert!((a[(0, 1)] + C::new(1.0, 0.0)).norm() < 1e-12);
        let cp = conserved_quantities(&a);
        let expected = expected_conserved(&h);
        assert!(cp.iter().zip(&expected).all(|(x, y)| (x - y).norm() < 1e-12));
        assert!(stabilizer_check(&b, &h, 1e-10).0);
        assert!(critical_locus_check(&fact, &h, 1e-10).passed);
    }

    #[test]
    fn expected_poly() {
        assert_eq!(expected_conserved(&[qi(1), qi(-1)]), vec![qi(0), qi(-1)]);
        assert_eq!(expected_conserved(&[qi(1), qi(2), qi(3)]), vec![qi(6), qi(11), qi(6)]);
    }

    #[test]
    fn identity_u1_violates_root_condition() {
        let mut f = fact_with_u1(2, Matrix::identity(3));
        f.t = vec![qi(6), qi(3), qi(1)];
        let rep = critical_locus_check(&f, &vec![qi(0); 3], 0.0);
        assert_eq!(rep.vanishing_residual, 0.0);
        assert!(!rep.passed && rep.root_residual > 0.0);
    }
}
