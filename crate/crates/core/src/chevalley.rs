//! Matrix realizations: SL_{n+1} in its defining representation, B₂ in the
//! 4-dimensional symplectic representation and G₂ in its 7-dimensional
//! representation, with one-parameter subgroups and Weyl representatives
//! `ṡ_i = x_i(1) y_i(−1) x_i(1)`.

use crate::braid::{self, TransformId};
use crate::matrix::Matrix;
use crate::scalar::{q, qi, Scalar, Q};
use crate::weyl::{CartanLabel, CartanSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RepError {
    #[error("relation failed: {0}")]
    Relation(String),
    #[error("singular group element")]
    Singular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneParam {
    X,
    Y,
}

#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub spec: CartanSpec,
    pub dim: usize,
    pub e: Vec<Matrix<Q>>,
    pub f: Vec<Matrix<Q>>,
    pub rho: Matrix<Q>,
    /// `e_i^k / k!` and `f_i^k / k!` for k = 0, 1, … until nilpotent.
    xpow: Vec<Vec<Matrix<Q>>>,
    ypow: Vec<Vec<Matrix<Q>>>,
    sdot: Vec<Matrix<Q>>,
}

fn em(n: usize, terms: &[(i64, usize, usize)]) -> Matrix<Q> {
    let mut m = Matrix::<Q>::zeros(n);
    for &(c, r, col) in terms {
        m[(r - 1, col - 1)] = m[(r - 1, col - 1)].clone() + qi(c);
    }
    m
}

fn exp_powers(x: &Matrix<Q>) -> Vec<Matrix<Q>> {
    let n = x.dim();
    let mut out = vec![Matrix::identity(n)];
    let mut k = 1;
    loop {
        let next = out[k - 1].mul(x).scale(&q(1, k as i64));
        if next.is_zero_matrix() {
            return out;
        }
        out.push(next);
        k += 1;
    }
}

impl MatrixRep {
    /// Builds a representation from generator matrices. Index `i` of the
    /// vectors corresponds to simple root `i + 1`.
    pub fn from_generators(spec: CartanSpec, e: Vec<Matrix<Q>>, f: Vec<Matrix<Q>>, rho: Matrix<Q>) -> Self {
        let dim = rho.dim();
        let xpow: Vec<_> = e.iter().map(exp_powers).collect();
        let ypow: Vec<_> = f.iter().map(exp_powers).collect();
        let eval = |pows: &Vec<Matrix<Q>>, s: Q| {
            pows.iter().enumerate().fold(Matrix::<Q>::zeros(dim), |acc, (k, p)| {
                acc.add(&p.scale(&num_traits::pow(s.clone(), k)))
            })
        };
        let sdot = (0..e.len())
            .map(|i| eval(&xpow[i], qi(1)).mul(&eval(&ypow[i], qi(-1))).mul(&eval(&xpow[i], qi(1))))
            .collect();
        MatrixRep { spec, dim, e, f, rho, xpow, ypow, sdot }
    }

    /// SL_{n+1}: e_i = E_{i,i+1}, f_i = E_{i+1,i}, ρ = diag(n, …, 0).
    pub fn type_a(n: usize) -> Self {
        let d = n + 1;
        let e = (1..=n).map(|i| em(d, &[(1, i, i + 1)])).collect();
        let f = (1..=n).map(|i| em(d, &[(1, i + 1, i)])).collect();
        let rho = Matrix::diag(&(0..d).map(|k| qi((n - k) as i64)).collect::<Vec<_>>());
        Self::from_generators(CartanSpec::a(n), e, f, rho)
    }

    /// B₂ ⊂ Sp₄; simple root 1 is long, 2 is short.
    pub fn b2() -> Self {
        let e = vec![em(4, &[(1, 2, 3)]), em(4, &[(1, 1, 2), (1, 3, 4)])];
        let f = vec![em(4, &[(1, 3, 2)]), em(4, &[(1, 2, 1), (1, 4, 3)])];
        let rho = Matrix::diag(&[qi(3), qi(2), qi(1), qi(0)]);
        Self::from_generators(CartanSpec::b2(), e, f, rho)
    }

    /// G₂ on its 7-dimensional module; simple root 1 is long, 2 is short.
    pub fn g2() -> Self {
        let e = vec![
            em(7, &[(1, 2, 3), (1, 5, 6)]),
            em(7, &[(1, 1, 2), (2, 3, 4), (1, 4, 5), (1, 6, 7)]),
        ];
        let f = vec![
            em(7, &[(1, 3, 2), (1, 6, 5)]),
            em(7, &[(1, 2, 1), (1, 4, 3), (2, 5, 4), (1, 7, 6)]),
        ];
        let rho = Matrix::diag(&(0..7).map(|k| qi(6 - k)).collect::<Vec<_>>());
        Self::from_generators(CartanSpec::g2(), e, f, rho)
    }

    pub fn for_spec(spec: &CartanSpec) -> Self {
        match spec.label {
            CartanLabel::A(n) => Self::type_a(n),
            CartanLabel::B2 => Self::b2(),
            CartanLabel::G2 => Self::g2(),
        }
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// `exp(s e_i)` or `exp(s f_i)`.
    pub fn one_param<S: Scalar>(&self, kind: OneParam, i: usize, s: &S) -> Matrix<S> {
        let pows = match kind {
            OneParam::X => &self.xpow[i - 1],
            OneParam::Y => &self.ypow[i - 1],
        };
        let mut out = Matrix::<S>::identity(self.dim);
        let mut sk = S::one();
        for p in pows.iter().skip(1) {
            sk = sk * s.clone();
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let v = &p[(r, c)];
                    if !num_traits::Zero::is_zero(v) {
                        out[(r, c)] = out[(r, c)].clone() + sk.clone() * S::from_q(v);
                    }
                }
            }
        }
        out
    }

    pub fn x<S: Scalar>(&self, i: usize, s: &S) -> Matrix<S> {
        self.one_param(OneParam::X, i, s)
    }

    pub fn y<S: Scalar>(&self, i: usize, s: &S) -> Matrix<S> {
        self.one_param(OneParam::Y, i, s)
    }

    pub fn sdot<S: Scalar>(&self, i: usize) -> Matrix<S> {
        self.sdot[i - 1].map(S::from_q)
    }

    pub fn sdot_inv<S: Scalar>(&self, i: usize) -> Matrix<S> {
        // ṡ_i⁻¹ = x_i(−1) y_i(1) x_i(−1)
        let m = S::from_i64(-1);
        let one = S::one();
        self.x(i, &m).mul(&self.y(i, &one)).mul(&self.x(i, &m))
    }

    /// `ẇ` for a word: product of the `ṡ_i` in word order.
    pub fn weyl_rep<S: Scalar>(&self, letters: &[usize]) -> Matrix<S> {
        letters.iter().fold(Matrix::identity(self.dim), |acc, &l| acc.mul(&self.sdot(l)))
    }

    pub fn rho<S: Scalar>(&self) -> Matrix<S> {
        self.rho.map(S::from_q)
    }
}

/// A group element, optionally compared modulo scalars (adjoint group).
#[derive(Clone, Debug)]
pub struct GroupElement<S> {
    pub mat: Matrix<S>,
    pub projective: bool,
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(mat: Matrix<S>, projective: bool) -> Result<Self, RepError> {
        if mat.det().is_zero() {
            return Err(RepError::Singular);
        }
        Ok(GroupElement { mat, projective })
    }

    pub fn mul(&self, o: &Self) -> Self {
        GroupElement { mat: self.mat.mul(&o.mat), projective: self.projective || o.projective }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { mat: self.mat.inverse().expect("group elements are invertible"), projective: self.projective }
    }
}

impl<S: Scalar> PartialEq for GroupElement<S> {
    fn eq(&self, o: &Self) -> bool {
        if self.projective || o.projective {
            self.mat.eq_projective(&o.mat)
        } else {
            self.mat == o.mat
        }
    }
}

/// Functional `η(X) = tr(M X)` on the Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CoadjointElement<S> {
    pub mat: Matrix<S>,
}

impl<S: Scalar> CoadjointElement<S> {
    pub fn pair(&self, x: &Matrix<S>) -> S {
        self.mat.mul(x).trace()
    }
}

/// `g·η`, realized as `g M g⁻¹`.
pub fn coadjoint_act<S: Scalar>(g: &GroupElement<S>, eta: &CoadjointElement<S>) -> Result<CoadjointElement<S>, RepError> {
    let inv = g.mat.inverse().ok_or(RepError::Singular)?;
    Ok(CoadjointElement { mat: g.mat.mul(&eta.mat).mul(&inv) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<(String, bool)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn ad_power(x: &Matrix<Q>, y: &Matrix<Q>, k: usize) -> Matrix<Q> {
    (0..k).fold(y.clone(), |acc, _| x.commutator(&acc))
}

/// Checks commutation relations, Serre relations, `α_i(ρ) = 1`, and for B₂
/// and G₂ the braid identities C₃ and C₈ at 10 random positive points.
pub fn validate_rep(rep: &MatrixRep) -> Result<ValidationReport, RepError> {
    let r = rep.rank();
    let a = &rep.spec.cartan;
    let mut checks = Vec::new();
    for i in 0..r {
        let h = rep.e[i].commutator(&rep.f[i]);
        checks.push((format!("[e{0},f{0}] diagonal", i + 1), h.is_diagonal() && !h.is_zero_matrix()));
        checks.push((
            format!("[rho,e{}] = e", i + 1),
            rep.rho.commutator(&rep.e[i]) == rep.e[i],
        ));
        for j in 0..r {
            // [h_i, e_j] = a_ij e_j
            checks.push((
                format!("[h{},e{}] = a e", i + 1, j + 1),
                h.commutator(&rep.e[j]) == rep.e[j].scale(&qi(a[i][j])),
            ));
            if i == j {
                continue;
            }
            checks.push((
                format!("[e{},f{}] = 0", i + 1, j + 1),
                rep.e[i].commutator(&rep.f[j]).is_zero_matrix(),
            ));
            let k = (1 - a[i][j]) as usize;
            checks.push((format!("serre e{} e{}", i + 1, j + 1), ad_power(&rep.e[i], &rep.e[j], k).is_zero_matrix()));
            checks.push((format!("serre f{} f{}", i + 1, j + 1), ad_power(&rep.f[i], &rep.f[j], k).is_zero_matrix()));
        }
    }
    let identity = match rep.spec.label {
        CartanLabel::B2 => Some(TransformId::C3),
        CartanLabel::G2 => Some(TransformId::C8),
        CartanLabel::A(_) => None,
    };
    if let Some(tr) = identity {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ok = (0..10).all(|_| {
            let sample: Vec<Q> = (0..tr.arity()).map(|_| q(rng.gen_range(1..=1000), rng.gen_range(1..=1000))).collect();
            braid::verify_identity(tr, rep, &sample).unwrap_or(false)
        });
        checks.push((format!("braid identity {tr:?}"), ok));
    }
    let report = ValidationReport { checks };
    match report.checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(RepError::Relation(name.clone())),
        None => Ok(report),
    }
}
