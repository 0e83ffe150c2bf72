//! Equivariant deformation of the quiver phase: arrow weights `λ_a`, their
//! vertex nets, the logarithmic-chart phase, `γ_R` and the pullback
//! comparison with the equivariant term on the Borel side.

use super::borel::{phase_fp, Parabolic};
use super::quiver::{b_of_vertices, beta, highest_weight_minor, minor_closed_form, phase, Quiver, VertexCoords};
use super::MirrorError;
use crate::matrix::Matrix;
use crate::scalar::{q_abs, Scalar, C, Q};
use num_traits::Zero;

/// Arrow weights together with the net weight at every vertex, i.e. the
/// coefficient of `T_v` in `Σ_a λ_a (T_{h_a} − T_{t_a})`.
#[derive(Clone, Debug, PartialEq)]
pub struct JkWeights<S> {
    /// Indexed like [`Quiver::arrows`].
    pub arrows: Vec<S>,
    /// Indexed like [`Quiver::lower`].
    pub net_lower: Vec<S>,
    /// Indexed by `i − 1` for `v_ii`.
    pub net_diagonal: Vec<S>,
}

fn partial_sum<S: Scalar>(lambda: &[S], upto: usize) -> S {
    lambda[..upto].iter().fold(S::zero(), |acc, l| acc + l.clone())
}

/// Weight of a single arrow; `λ` is 0-indexed so `lambda[k − 1] = λ_k`.
///
/// `c_i1 = λ_i + ½(λ_1+…+λ_{i−1})`, `c_ij = ½λ_{i−j+1}` for `j > 1`,
/// `d_ij = −½λ_{i−j+1}` for `i ≤ n`, and on the bottom row
/// `d_{n+1,j} = −λ_{n+2−j} − ½(λ_1+…+λ_{n+1−j})`.
fn arrow_weight<S: Scalar>(n: usize, lambda: &[S], kind: super::ArrowKind, i: usize, j: usize) -> S {
    let half = S::one() / S::from_i64(2);
    match kind {
        super::ArrowKind::C if j == 1 => lambda[i - 1].clone() + half * partial_sum(lambda, i - 1),
        super::ArrowKind::C => half * lambda[i - j].clone(),
        super::ArrowKind::D if i <= n => -(half * lambda[i - j].clone()),
        super::ArrowKind::D => -lambda[n + 1 - j].clone() - half * partial_sum(lambda, n + 1 - j),
    }
}

pub fn jk_weights<S: Scalar>(quiver: &Quiver, lambda: &[S]) -> Result<JkWeights<S>, MirrorError> {
    let n = quiver.n;
    if lambda.len() != n + 1 {
        return Err(MirrorError::Domain(format!("expected {} equivariant parameters", n + 1)));
    }
    let sum = partial_sum(lambda, n + 1);
    if !sum.is_negligible(lambda.iter().map(|l| l.magnitude()).sum::<f64>()) {
        return Err(MirrorError::Domain("equivariant parameters must sum to zero".into()));
    }
    let arrows: Vec<S> = quiver.arrows.iter().map(|a| arrow_weight(n, lambda, a.kind, a.i, a.j)).collect();
    let net = |v: (usize, usize)| {
        quiver.arrows.iter().zip(&arrows).fold(S::zero(), |mut acc, (a, w)| {
            if a.head == v {
                acc = acc + w.clone();
            }
            if a.tail == v {
                acc = acc - w.clone();
            }
            acc
        })
    };
    let weights = JkWeights {
        net_lower: quiver.lower.iter().map(|&v| net(v)).collect(),
        net_diagonal: quiver.diagonal.iter().map(|&v| net(v)).collect(),
        arrows,
    };
    // The deformation must shift each balance equation by λ_{k+1} − λ_k.
    let scale = lambda.iter().map(|l| l.magnitude()).fold(1.0, f64::max);
    for (v, w) in quiver.lower.iter().zip(&weights.net_lower) {
        let k = Quiver::depth(*v);
        let expected = lambda[k].clone() - lambda[k - 1].clone();
        if !(w.clone() - expected).is_negligible(scale) {
            return Err(MirrorError::Invariant(format!("net weight at v{}{} breaks the vertex contract", v.0, v.1)));
        }
    }
    Ok(weights)
}

/// `Σ_a λ_a (T_{h_a} − T_{t_a})`.
pub fn jk_correction<S: Scalar>(quiver: &Quiver, big_t: &VertexCoords<S>, lambda: &[S]) -> Result<S, MirrorError> {
    let w = jk_weights(quiver, lambda)?;
    Ok(quiver.arrows.iter().zip(&w.arrows).fold(S::zero(), |acc, (a, l)| {
        acc + l.clone() * (big_t.get(a.head).clone() - big_t.get(a.tail).clone())
    }))
}

/// `Σ_a exp(T_{h_a} − T_{t_a}) + Σ_a λ_a (T_{h_a} − T_{t_a})`.
pub fn phase_jk(quiver: &Quiver, big_t: &VertexCoords<C>, lambda: &[C]) -> Result<C, MirrorError> {
    let exp: C = quiver.arrows.iter().map(|a| (big_t.get(a.head) - big_t.get(a.tail)).exp()).sum();
    Ok(exp + jk_correction(quiver, big_t, lambda)?)
}

/// `S_k = Σ_{i−j=k} T_ij`.
fn band_sum<S: Scalar>(big_t: &VertexCoords<S>, k: usize) -> S {
    (1..=big_t.n + 1 - k).fold(S::zero(), |acc, j| acc + big_t.get((j + k, j)).clone())
}

/// `diag(−S_1, S_1 − S_2, …, S_{n−1} − S_n, S_n)`.
pub fn gamma_r<S: Scalar>(big_t: &VertexCoords<S>) -> Matrix<S> {
    let n = big_t.n;
    let s: Vec<S> = (0..=n + 1).map(|k| if k == 0 || k > n { S::zero() } else { band_sum(big_t, k) }).collect();
    Matrix::diag(&(0..=n).map(|i| s[i].clone() - s[i + 1].clone()).collect::<Vec<_>>())
}

/// `⟨λ, γ⟩ = tr(diag(λ) γ)`.
pub fn pair_lambda<S: Scalar>(lambda: &[S], gamma: &Matrix<S>) -> S {
    Matrix::diag(lambda).mul(gamma).trace()
}

/// The three exact parts of the equivariant comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivParts {
    /// Weighted arrow sum minus `⟨λ, γ_R(T)⟩`.
    pub linear: Q,
    /// `F̃(σ) − F_B(β(σ))` at the multiplicative point.
    pub phase: Q,
    /// `Σ_k |minor_k(b) − closed form|` at the multiplicative point.
    pub minors: Q,
}

impl EquivParts {
    pub fn total(&self) -> Q {
        q_abs(&self.linear) + q_abs(&self.phase) + q_abs(&self.minors)
    }
}

/// Exact comparison split into parts. Logarithms are not rational, so the
/// multiplicative identities are checked at the separate rational vertex
/// point `z`, and the linear identity at the logarithmic point `T`.
pub fn equiv_compare_parts(
    quiver: &Quiver,
    big_t: &VertexCoords<Q>,
    z: &VertexCoords<Q>,
    lambda: &[Q],
) -> Result<EquivParts, MirrorError> {
    let diag_sum = (1..=quiver.n + 1).fold(Q::zero(), |acc, i| acc + big_t.get((i, i)).clone());
    if !diag_sum.is_zero() {
        return Err(MirrorError::Domain("diagonal log coordinates must sum to zero".into()));
    }
    let linear = jk_correction(quiver, big_t, lambda)? - pair_lambda(lambda, &gamma_r(big_t));
    let sigma = z.point(quiver);
    let b = beta(quiver, &sigma)?;
    let phase_part = phase(&sigma) - phase_fp(&b, &Parabolic::borel(quiver.n))?;
    let bz = b_of_vertices(quiver, z);
    let mut minors = Q::zero();
    for k in 1..=quiver.n {
        minors += q_abs(&(highest_weight_minor(&bz, k) - minor_closed_form(z, k)?));
    }
    Ok(EquivParts { linear, phase: phase_part, minors })
}

/// Exact residual of the equivariant comparison at rational `(T, λ)`; the
/// multiplicative part uses `z_v = 1 + T_v²`.
pub fn equiv_compare_residual(quiver: &Quiver, big_t: &VertexCoords<Q>, lambda: &[Q]) -> Result<Q, MirrorError> {
    let one = Q::from_integer(1.into());
    let z = VertexCoords::new(quiver.n, |i, j| one.clone() + big_t.get((i, j)).clone() * big_t.get((i, j)).clone());
    Ok(equiv_compare_parts(quiver, big_t, &z, lambda)?.total())
}

/// Float residual with true exponentials: `F̃_JK(T)` against
/// `F_B(β(e^T)) + Σ_k (λ_k − λ_{k+1}) ln minor_k(b(e^T))`.
pub fn equiv_compare_residual_float(quiver: &Quiver, big_t: &VertexCoords<C>, lambda: &[C]) -> Result<f64, MirrorError> {
    let lhs = phase_jk(quiver, big_t, lambda)?;
    let t = VertexCoords::new(quiver.n, |i, j| big_t.get((i, j)).exp());
    let sigma = t.point(quiver);
    let b = beta(quiver, &sigma)?;
    let mut rhs = phase_fp(&b, &Parabolic::borel(quiver.n))?;
    let bt = b_of_vertices(quiver, &t);
    for k in 1..=quiver.n {
        rhs += (lambda[k - 1] - lambda[k]) * highest_weight_minor(&bt, k).ln();
    }
    let scale = lhs.norm().max(rhs.norm()).max(1.0);
    Ok((lhs - rhs).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::quiver::build_quiver;
    use crate::scalar::{q, qi};

    #[test]
    fn n1_nets() {
        let quiver = build_quiver(1).unwrap();
        let lam = [q(3, 2), q(-3, 2)];
        let w = jk_weights(&quiver, &lam).unwrap();
        assert_eq!(w.net_lower, vec![qi(-3)]);
        assert_eq!(w.net_diagonal, vec![q(3, 2), q(3, 2)]);
    }

    #[test]
    fn n2_contract() {
        let quiver = build_quiver(2).unwrap();
        let lam = [q(1, 3), q(-1, 2), q(1, 6)];
        let w = jk_weights(&quiver, &lam).unwrap();
        let v31 = quiver.lower_index((3, 1)).unwrap();
        assert_eq!(w.net_lower[v31], lam[2].clone() - lam[1].clone());
        assert!(w.net_diagonal.iter().all(|x| *x == lam[0]));
    }

    #[test]
    fn zero_lambda_has_zero_weights() {
        let quiver = build_quiver(3).unwrap();
        let w = jk_weights(&quiver, &[qi(0), qi(0), qi(0), qi(0)]).unwrap();
        assert!(w.arrows.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rejects_unbalanced_lambda() {
        let quiver = build_quiver(1).unwrap();
        assert!(jk_weights(&quiver, &[qi(1), qi(0)]).is_err());
    }

    #[test]
    fn gamma_n1() {
        let t = VertexCoords { n: 1, t: vec![vec![qi(2)], vec![qi(5), qi(-2)]] };
        assert_eq!(gamma_r(&t), Matrix::diag(&[qi(-5), qi(5)]));
        let lam = [qi(1), qi(-1)];
        assert_eq!(pair_lambda(&lam, &gamma_r(&t)), qi(-10));
    }

    #[test]
    fn phase_jk_n1() {
        let quiver = build_quiver(1).unwrap();
        let u = 0.3;
        let t = VertexCoords { n: 1, t: vec![vec![C::new(u, 0.0)], vec![C::new(0.0, 0.0), C::new(-u, 0.0)]] };
        let v = phase_jk(&quiver, &t, &[C::new(0.0, 0.0); 2]).unwrap();
        assert!((v - C::new(2.0 * u.exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn residual_vanishes_n2() {
        let quiver = build_quiver(2).unwrap();
        let t = VertexCoords::new(2, |i, j| if i == j { q(i as i64 - 2, 1) } else { q((i * 7 + j) as i64, 5) });
        let lam = [q(1, 3), q(-1, 2), q(1, 6)];
        assert_eq!(equiv_compare_residual(&quiver, &t, &lam).unwrap(), qi(0));
    }

    #[test]
    fn float_residual_n2() {
        let quiver = build_quiver(2).unwrap();
        let t = VertexCoords::new(2, |i, j| C::new(if i == j { i as f64 - 2.0 } else { 0.1 * (i * 3 + j) as f64 }, 0.0));
        let lam = [C::new(0.4, 0.0), C::new(-0.7, 0.0), C::new(0.3, 0.0)];
        assert!(equiv_compare_residual_float(&quiver, &t, &lam).unwrap() < 1e-12);
    }
}
