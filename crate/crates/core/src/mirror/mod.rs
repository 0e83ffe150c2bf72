//! Mirror families for SL(n+1)/P: Givental's quiver model with the Joe–Kim
//! equivariant weights, the Lie-theoretic family `Z_P` with its phase
//! function `F_P`, the comparison maps between them, and a fiberwise
//! critical-point solver.

pub mod borel;
pub mod equivariant;
pub mod quiver;
pub mod solver;

use crate::deodhar::DeodharError;
use crate::scalar::C;
use thiserror::Error;

pub use borel::{
    factorize_borel, factorize_bruhat, fiber_point, phase_fp, symmetry_map, unipotent_positions, BorelFactorization, Parabolic,
};
pub use equivariant::{equiv_compare_residual, equiv_compare_residual_float, gamma_r, jk_weights, phase_jk, JkWeights};
pub use quiver::{beta, build_quiver, minor_closed_form, tau, x_c, x_d, Arrow, ArrowKind, Quiver, QuiverPoint, VertexCoords};
pub use solver::{solve_critical, solve_with, CriticalRecord, FiberProblem, Route, SolveOutcome, SolverConfig};

#[derive(Debug, Error, PartialEq)]
pub enum MirrorError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not in the open set: {0}")]
    NotInOpenSet(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Deodhar(#[from] DeodharError),
}

/// One fiber of the family over the quantum parameters, with equivariant
/// parameters `λ` (all zero for the plain family).
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSpec {
    pub n: usize,
    /// Simple roots of the Levi factor; empty for the Borel.
    pub parabolic: Vec<usize>,
    pub q: Vec<C>,
    pub lambda: Vec<C>,
    /// Carried for reporting only; critical points do not depend on it.
    pub hbar: f64,
}

impl FiberSpec {
    pub fn new(n: usize, parabolic: Vec<usize>, q: Vec<C>, lambda: Option<Vec<C>>) -> Result<Self, MirrorError> {
        let lambda = lambda.unwrap_or_else(|| vec![C::new(0.0, 0.0); n + 1]);
        let fiber = FiberSpec { n, parabolic, q, lambda, hbar: 1.0 };
        fiber.validate()?;
        Ok(fiber)
    }

    pub fn validate(&self) -> Result<(), MirrorError> {
        if self.n < 1 {
            return Err(MirrorError::Domain("rank must be at least 1".into()));
        }
        let mut seen = self.parabolic.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.parabolic.len() || seen.iter().any(|&i| i == 0 || i > self.n) {
            return Err(MirrorError::Domain(format!("bad parabolic subset {:?}", self.parabolic)));
        }
        if seen.len() == self.n {
            return Err(MirrorError::Domain("parabolic subset must be proper".into()));
        }
        let k = self.n - self.parabolic.len();
        if self.q.len() != k {
            return Err(MirrorError::Domain(format!("expected {k} quantum parameters, got {}", self.q.len())));
        }
        if self.q.iter().any(|q| q.norm() == 0.0) {
            return Err(MirrorError::Domain("quantum parameters must be nonzero".into()));
        }
        if self.lambda.len() != self.n + 1 {
            return Err(MirrorError::Domain(format!("expected {} equivariant parameters", self.n + 1)));
        }
        let sum: C = self.lambda.iter().sum();
        if sum.norm() > 1e-12 * (1.0 + self.lambda.iter().map(|l| l.norm()).sum::<f64>()) {
            return Err(MirrorError::Domain("equivariant parameters must sum to zero".into()));
        }
        Ok(())
    }

    /// Simple roots outside the Levi factor, in increasing order.
    pub fn marked(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.parabolic.contains(i)).collect()
    }

    /// `α_k(t)` for every simple root: `q_j` at the j-th marked root, 1 on
    /// the Levi roots.
    pub fn root_values(&self) -> Vec<C> {
        let mut r = vec![C::new(1.0, 0.0); self.n];
        for (q, k) in self.q.iter().zip(self.marked()) {
            r[k - 1] = *q;
        }
        r
    }

    /// Torus element with `α_k(t)` given by [`FiberSpec::root_values`] and
    /// last entry 1.
    pub fn torus(&self) -> Vec<C> {
        let r = self.root_values();
        let mut t = vec![C::new(1.0, 0.0); self.n + 1];
        for i in (0..self.n).rev() {
            t[i] = t[i + 1] * r[i];
        }
        t
    }

    pub fn is_equivariant(&self) -> bool {
        self.lambda.iter().any(|l| l.norm() != 0.0)
    }
}
