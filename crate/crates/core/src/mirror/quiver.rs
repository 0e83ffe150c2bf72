//! Givental's quiver for SL(n+1)/B, its points, and the comparison map
//! `β = x_c τ ẇ₀⁻¹ x_d(−σ)⁻¹` into the lower Borel.
//!
//! Vertices are `v_ij` with `1 ≤ j ≤ i ≤ n+1`. The arrow `c_ij`
//! (`1 ≤ j ≤ i ≤ n`) runs from `v_{i+1,j}` to `v_ij`, and `d_ij`
//! (`2 ≤ j ≤ i ≤ n+1`) runs from `v_ij` to `v_{i,j−1}`.

use super::MirrorError;
use crate::chevalley::MatrixRep;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::weyl::longest_word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub i: usize,
    pub j: usize,
    pub tail: (usize, usize),
    pub head: (usize, usize),
}

impl Arrow {
    pub fn label(&self) -> String {
        let k = match self.kind {
            ArrowKind::C => 'c',
            ArrowKind::D => 'd',
        };
        format!("{k}{}{}", self.i, self.j)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quiver {
    pub n: usize,
    /// Strictly lower vertices `v_ij`, `i > j`, in lexicographic order.
    pub lower: Vec<(usize, usize)>,
    pub diagonal: Vec<(usize, usize)>,
    /// All `c` arrows, then all `d` arrows, each in lexicographic order.
    pub arrows: Vec<Arrow>,
    /// Unit squares as arrow indices `(d, c, c', d')` with
    /// `σ_d σ_c = σ_c' σ_d'`.
    pub boxes: Vec<[usize; 4]>,
}

pub fn build_quiver(n: usize) -> Result<Quiver, MirrorError> {
    if n < 1 {
        return Err(MirrorError::Domain("quiver needs n >= 1".into()));
    }
    let lower = (1..=n + 1).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
    let diagonal = (1..=n + 1).map(|i| (i, i)).collect();
    let mut arrows = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            arrows.push(Arrow { kind: ArrowKind::C, i, j, tail: (i + 1, j), head: (i, j) });
        }
    }
    for i in 2..=n + 1 {
        for j in 2..=i {
            arrows.push(Arrow { kind: ArrowKind::D, i, j, tail: (i, j), head: (i, j - 1) });
        }
    }
    let mut quiver = Quiver { n, lower, diagonal, arrows, boxes: Vec::new() };
    for i in 2..=n {
        for j in 2..=i {
            quiver.boxes.push([quiver.d(i, j), quiver.c(i, j), quiver.c(i, j - 1), quiver.d(i + 1, j)]);
        }
    }
    Ok(quiver)
}

impl Quiver {
    /// Index of `c_ij` in [`Quiver::arrows`].
    pub fn c(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= j && j <= i && i <= self.n);
        i * (i - 1) / 2 + j - 1
    }

    /// Index of `d_ij` in [`Quiver::arrows`].
    pub fn d(&self, i: usize, j: usize) -> usize {
        debug_assert!(2 <= j && j <= i && i <= self.n + 1);
        let nc = self.n * (self.n + 1) / 2;
        nc + (i - 1) * (i - 2) / 2 + j - 2
    }

    pub fn lower_index(&self, v: (usize, usize)) -> Option<usize> {
        self.lower.iter().position(|&w| w == v)
    }

    /// Depth `i − j` of a vertex.
    pub fn depth(v: (usize, usize)) -> usize {
        v.0 - v.1
    }
}

/// Vertex values `t_ij` (`t[i−1][j−1]`), defined up to a common scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexCoords<S> {
    pub n: usize,
    pub t: Vec<Vec<S>>,
}

impl<S: Scalar> VertexCoords<S> {
    pub fn new(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        VertexCoords { n, t: (1..=n + 1).map(|i| (1..=i).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn get(&self, v: (usize, usize)) -> &S {
        &self.t[v.0 - 1][v.1 - 1]
    }

    /// Arrow values `σ_a = t_{h_a} / t_{t_a}`.
    pub fn point(&self, quiver: &Quiver) -> QuiverPoint<S> {
        QuiverPoint {
            n: self.n,
            sigma: quiver.arrows.iter().map(|a| self.get(a.head).clone() / self.get(a.tail).clone()).collect(),
        }
    }
}

/// Arrow values on the quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverPoint<S> {
    pub n: usize,
    pub sigma: Vec<S>,
}

impl<S: Scalar> QuiverPoint<S> {
    pub fn value(&self, quiver: &Quiver, kind: ArrowKind, i: usize, j: usize) -> S {
        let k = match kind {
            ArrowKind::C => quiver.c(i, j),
            ArrowKind::D => quiver.d(i, j),
        };
        self.sigma[k].clone()
    }

    pub fn check_boxes(&self, quiver: &Quiver) -> bool {
        let scale = self.sigma.iter().map(|s| s.magnitude()).fold(1.0, f64::max);
        quiver.boxes.iter().all(|b| {
            let lhs = self.sigma[b[0]].clone() * self.sigma[b[1]].clone();
            let rhs = self.sigma[b[2]].clone() * self.sigma[b[3]].clone();
            (lhs - rhs).is_negligible(scale * scale)
        })
    }

    /// `q̃_i = σ(c_ii) σ(d_{i+1,i+1})`.
    pub fn q_tilde(&self, quiver: &Quiver) -> Vec<S> {
        (1..=self.n).map(|i| self.sigma[quiver.c(i, i)].clone() * self.sigma[quiver.d(i + 1, i + 1)].clone()).collect()
    }

    /// Vertex values normalized by `t_{n+1,n+1} = 1`.
    pub fn vertex_coords(&self, quiver: &Quiver) -> VertexCoords<S> {
        let n = self.n;
        let qt = self.q_tilde(quiver);
        let mut t: Vec<Vec<S>> = (1..=n + 1).map(|i| vec![S::zero(); i]).collect();
        t[n][n] = S::one();
        for i in (1..=n).rev() {
            t[i - 1][i - 1] = t[i][i].clone() * qt[i - 1].clone();
        }
        for j in 1..=n {
            for i in j..=n {
                // c_ij runs from v_{i+1,j} to v_ij
                t[i][j - 1] = t[i - 1][j - 1].clone() / self.sigma[quiver.c(i, j)].clone();
            }
        }
        VertexCoords { n, t }
    }

    pub fn negated(&self) -> Self {
        QuiverPoint { n: self.n, sigma: self.sigma.iter().map(|s| -s.clone()).collect() }
    }
}

/// Givental's phase `Σ_a σ_a`.
pub fn phase<S: Scalar>(sigma: &QuiverPoint<S>) -> S {
    sigma.sigma.iter().fold(S::zero(), |acc, s| acc + s.clone())
}

/// Balance at each lower vertex of depth `k`: incoming minus outgoing arrow
/// values plus `λ_{k+1} − λ_k`.
pub fn critical_residual<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>, lambda: &[S]) -> Vec<S> {
    quiver
        .lower
        .iter()
        .map(|&v| {
            let mut r = S::zero();
            for (a, s) in quiver.arrows.iter().zip(&sigma.sigma) {
                if a.head == v {
                    r = r + s.clone();
                }
                if a.tail == v {
                    r = r - s.clone();
                }
            }
            let k = Quiver::depth(v);
            r + lambda[k].clone() - lambda[k - 1].clone()
        })
        .collect()
}

fn x_product<S: Scalar>(rep: &MatrixRep, factors: &[(usize, S)]) -> Matrix<S> {
    factors.iter().fold(Matrix::identity(rep.dim), |acc, (i, s)| acc.mul(&rep.x(*i, s)))
}

fn c_factors<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>) -> Vec<(usize, S)> {
    let n = quiver.n;
    (1..=n).flat_map(|k| (k..=n).rev().map(move |j| (j, k))).map(|(j, k)| (j, sigma.sigma[quiver.c(j, k)].clone())).collect()
}

fn d_factors<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>) -> Vec<(usize, S)> {
    let n = quiver.n;
    (1..=n)
        .rev()
        .flat_map(|k| (1..=k).map(move |j| (j, k)))
        .map(|(j, k)| (n - j + 1, sigma.sigma[quiver.d(k + 1, j + 1)].clone()))
        .collect()
}

/// `∏_{k=1..n} ∏_{j=n..k} x_j(σ_{c_jk})`.
pub fn x_c<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>) -> Matrix<S> {
    x_product(&MatrixRep::type_a(quiver.n), &c_factors(quiver, sigma))
}

/// `∏_{k=n..1} ∏_{j=1..k} x_{n−j+1}(σ_{d_{k+1,j+1}})`.
pub fn x_d<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>) -> Matrix<S> {
    x_product(&MatrixRep::type_a(quiver.n), &d_factors(quiver, sigma))
}

/// `diag(q̃_1⋯q̃_n, …, q̃_n, 1)`.
pub fn tau<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>) -> Matrix<S> {
    let qt = sigma.q_tilde(quiver);
    let mut d = vec![S::one(); quiver.n + 1];
    for i in (0..quiver.n).rev() {
        d[i] = d[i + 1].clone() * qt[i].clone();
    }
    Matrix::diag(&d)
}

pub fn w0_inverse<S: Scalar>(rep: &MatrixRep) -> Matrix<S> {
    longest_word(&rep.spec).iter().rev().fold(Matrix::identity(rep.dim), |acc, &i| acc.mul(&rep.sdot_inv(i)))
}

/// `x_c(σ) · diag · ẇ₀⁻¹ · x_d(−σ)⁻¹` for an arbitrary diagonal middle
/// factor.
pub fn beta_with_diag<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>, diag: &Matrix<S>) -> Matrix<S> {
    let rep = MatrixRep::type_a(quiver.n);
    // x_d(−σ)⁻¹ is the reversed product with the signs restored
    let mut inv: Vec<(usize, S)> = d_factors(quiver, sigma);
    inv.reverse();
    x_product(&rep, &c_factors(quiver, sigma)).mul(diag).mul(&w0_inverse(&rep)).mul(&x_product(&rep, &inv))
}

/// `β(σ) = x_c(σ) τ(σ) ẇ₀⁻¹ x_d(−σ)⁻¹`; lower triangular on valid points.
pub fn beta<S: Scalar>(quiver: &Quiver, sigma: &QuiverPoint<S>) -> Result<Matrix<S>, MirrorError> {
    let b = beta_with_diag(quiver, sigma, &tau(quiver, sigma));
    let scale = b.max_abs();
    for r in 0..b.dim() {
        for c in r + 1..b.dim() {
            if !b[(r, c)].is_negligible(scale) {
                return Err(MirrorError::Invariant(format!("beta has nonzero entry at ({}, {})", r + 1, c + 1)));
            }
        }
    }
    Ok(b)
}

/// `b(t̄)` with the full diagonal `diag(t̄_11, …, t̄_{n+1,n+1})`.
pub fn b_of_vertices<S: Scalar>(quiver: &Quiver, t: &VertexCoords<S>) -> Matrix<S> {
    let diag = Matrix::diag(&(1..=quiver.n + 1).map(|i| t.get((i, i)).clone()).collect::<Vec<_>>());
    beta_with_diag(quiver, &t.point(quiver), &diag)
}

/// `(∏_i t̄_ii) / (∏_{i−j=k} t̄_ij)`.
pub fn minor_closed_form<S: Scalar>(t: &VertexCoords<S>, k: usize) -> Result<S, MirrorError> {
    if k < 1 || k > t.n {
        return Err(MirrorError::Domain(format!("minor index {k} out of range")));
    }
    let mut num = S::one();
    for i in 1..=t.n + 1 {
        num = num * t.get((i, i)).clone();
    }
    let mut den = S::one();
    for j in 1..=t.n + 1 - k {
        let v = t.get((j + k, j)).clone();
        if v.is_zero() {
            return Err(MirrorError::Domain(format!("t_{}{} vanishes", j + k, j)));
        }
        den = den * v;
    }
    Ok(num / den)
}

/// Top-left `k × k` minor, i.e. `⟨b·v⁺, v⁺⟩` in `Λᵏ`.
pub fn highest_weight_minor<S: Scalar>(b: &Matrix<S>, k: usize) -> S {
    let idx: Vec<usize> = (0..k).collect();
    b.minor(&idx, &idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Q};

    fn point(quiver: &Quiver, vals: &[i64]) -> QuiverPoint<Q> {
        QuiverPoint { n: quiver.n, sigma: vals.iter().map(|&v| qi(v)).collect() }
    }

    #[test]
    fn quiver_shapes() {
        let q1 = build_quiver(1).unwrap();
        assert_eq!(q1.lower, vec![(2, 1)]);
        assert_eq!(q1.arrows.len(), 2);
        assert_eq!(q1.arrows[0].tail, (2, 1));
        assert_eq!(q1.arrows[1].label(), "d22");
        assert!(q1.boxes.is_empty());
        let q2 = build_quiver(2).unwrap();
        assert_eq!(q2.lower.len(), 3);
        assert_eq!(q2.arrows.len(), 6);
        assert_eq!(q2.boxes.len(), 1);
        assert_eq!(build_quiver(3).unwrap().lower.len(), 6);
        assert!(build_quiver(0).is_err());
        for n in 1..=4 {
            let quiver = build_quiver(n).unwrap();
            for (k, a) in quiver.arrows.iter().enumerate() {
                let idx = match a.kind {
                    ArrowKind::C => quiver.c(a.i, a.j),
                    ArrowKind::D => quiver.d(a.i, a.j),
                };
                assert_eq!(idx, k);
            }
        }
    }

    #[test]
    fn phase_and_residual_n1() {
        let quiver = build_quiver(1).unwrap();
        let p = QuiverPoint { n: 1, sigma: vec![qi(2), q(1, 2)] };
        assert_eq!(phase(&p), q(5, 2));
        assert_eq!(critical_residual(&quiver, &p, &[qi(0), qi(0)]), vec![q(-3, 2)]);
        assert_eq!(phase(&point(&quiver, &[1, 1])), qi(2));
        assert_eq!(phase(&point(&build_quiver(2).unwrap(), &[1; 6])), qi(6));
    }

    #[test]
    fn beta_n1() {
        let quiver = build_quiver(1).unwrap();
        let p = QuiverPoint { n: 1, sigma: vec![qi(3), q(2, 5)] };
        let b = beta(&quiver, &p).unwrap();
        assert_eq!(b, Matrix::from_rows(vec![vec![qi(3), qi(0)], vec![qi(1), q(2, 5)]]));
        let rep = MatrixRep::type_a(1);
        assert_eq!(x_c(&quiver, &p), rep.x(1, &qi(3)));
        assert_eq!(x_d(&quiver, &p), rep.x(1, &q(2, 5)));
        assert_eq!(tau(&quiver, &p), Matrix::diag(&[q(6, 5), qi(1)]));
    }

    #[test]
    fn x_c_order_n2() {
        let quiver = build_quiver(2).unwrap();
        let p = point(&quiver, &[1; 6]);
        let rep = MatrixRep::type_a(2);
        let one = qi(1);
        assert_eq!(x_c(&quiver, &p), rep.x(2, &one).mul(&rep.x(1, &one)).mul(&rep.x(2, &one)));
    }

    #[test]
    fn vertex_roundtrip() {
        let quiver = build_quiver(3).unwrap();
        let t = VertexCoords::new(3, |i, j| q((i * 7 + j * 3) as i64, (i + 2 * j) as i64));
        let p = t.point(&quiver);
        assert!(p.check_boxes(&quiver));
        let back = p.vertex_coords(&quiver);
        let scale = t.get((4, 4)).clone();
        for i in 1..=4 {
            for j in 1..=i {
                assert_eq!(back.get((i, j)).clone() * scale.clone(), t.get((i, j)).clone());
            }
        }
    }

    #[test]
    fn all_ones_minor() {
        let quiver = build_quiver(2).unwrap();
        let t = VertexCoords::new(2, |_, _| qi(1));
        for k in 1..=2 {
            assert_eq!(minor_closed_form(&t, k).unwrap(), qi(1));
            assert_eq!(highest_weight_minor(&b_of_vertices(&quiver, &t), k), qi(1));
        }
    }
}
