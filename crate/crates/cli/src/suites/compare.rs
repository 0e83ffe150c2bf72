//! `mirror verify compare`: the comparison map `(τ, β)` from the quiver
//! model into `Z_B`, the minor formula, the equivariant pullback and the
//! symmetry `b ↦ b⁻¹`, on random points.

use super::{agree, document, nonzero_q, rng};
use crate::report::{ReportDocument, Row};
use crate::{Mode, SuiteConfig, SuiteError};
use mirror_core::matrix::Matrix;
use mirror_core::mirror::equivariant::equiv_compare_residual;
use mirror_core::mirror::quiver::{b_of_vertices, beta_with_diag, highest_weight_minor, phase};
use mirror_core::mirror::{
    build_quiver, equiv_compare_residual_float, factorize_borel, fiber_point, minor_closed_form, phase_fp, symmetry_map, tau,
    unipotent_positions, Parabolic, Quiver, VertexCoords,
};
use mirror_core::scalar::{Scalar, C, Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Float-mode tolerance, relative.
pub const FLOAT_TOL: f64 = 1e-12;

pub fn run(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let ranks: Vec<usize> = match cfg.rank {
        Some(0) => return Err(SuiteError::Config("--rank must be at least 1".into())),
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    let samples = cfg.samples.unwrap_or(100);
    let tol = cfg.tol.unwrap_or(FLOAT_TOL);
    let mut doc = document(cfg);
    for n in ranks {
        let quiver = build_quiver(n)?;
        let mut checks = match cfg.mode {
            Mode::Exact => Checks::run::<Q>(&quiver, samples, cfg.seed, 0.0, &|r| nonzero_q(r, 20)),
            Mode::Float => Checks::run::<C>(&quiver, samples, cfg.seed, tol, &|r| {
                C::new(mirror_core::scalar::q_to_f64(&nonzero_q(r, 20)), r.gen_range(-1.0..1.0))
            }),
        };
        checks.equivariant = match cfg.mode {
            Mode::Exact => equivariant_exact(&quiver, samples, cfg.seed),
            Mode::Float => equivariant_float(&quiver, samples, cfg.seed, tol),
        };
        let exact = cfg.mode == Mode::Exact;
        let inputs = json!({ "n": n, "samples": samples, "seed": cfg.seed, "mode": cfg.mode });
        for (name, (ok, residual)) in checks.named() {
            let row = if exact {
                Row::exact(format!("compare.n{n}.{name}"), &json!([inputs, name]), ok)
            } else {
                Row::float(format!("compare.n{n}.{name}"), &json!([inputs, name]), residual, tol)
            };
            doc.rows.push(row);
        }
    }
    Ok(doc)
}

/// `(all passed, largest residual)` per check.
#[derive(Default)]
struct Checks {
    beta: (bool, f64),
    phase: (bool, f64),
    minors: (bool, f64),
    equivariant: (bool, f64),
    symmetry_borel: (bool, f64),
    symmetry_maximal: Option<(bool, f64)>,
}

fn fold(acc: &mut (bool, f64), r: (bool, f64)) {
    acc.0 &= r.0;
    acc.1 = acc.1.max(r.1);
}

const FAILED: (bool, f64) = (false, f64::INFINITY);

impl Checks {
    fn named(&self) -> Vec<(&'static str, (bool, f64))> {
        let mut v = vec![
            ("beta", self.beta),
            ("phase", self.phase),
            ("minors", self.minors),
            ("equivariant", self.equivariant),
            ("symmetry.borel", self.symmetry_borel),
        ];
        if let Some(m) = self.symmetry_maximal {
            v.push(("symmetry.maximal", m));
        }
        v
    }

    fn run<S: Scalar>(quiver: &Quiver, samples: usize, seed: u64, tol: f64, draw: &dyn Fn(&mut ChaCha8Rng) -> S) -> Self {
        let n = quiver.n;
        let ok = (true, 0.0);
        let mut c = Checks { beta: ok, phase: ok, minors: ok, equivariant: ok, symmetry_borel: ok, symmetry_maximal: None };
        let maximal = (n >= 2).then(|| Parabolic::new(n, (2..=n).collect()).expect("valid"));
        if maximal.is_some() {
            c.symmetry_maximal = Some(ok);
        }
        for s in 0..samples {
            let mut r = rng(seed, s as u64);
            let vals: Vec<Vec<S>> = (1..=n + 1).map(|i| (0..i).map(|_| draw(&mut r)).collect()).collect();
            let t = VertexCoords::new(n, |i, j| vals[i - 1][j - 1].clone());
            let sigma = t.point(quiver);
            let b = beta_with_diag(quiver, &sigma, &tau(quiver, &sigma));
            for row in 0..=n {
                for col in row + 1..=n {
                    fold(&mut c.beta, agree(&b[(row, col)], &S::zero(), tol));
                }
            }
            match phase_fp(&b, &Parabolic::borel(n)) {
                Ok(v) => fold(&mut c.phase, agree(&v, &phase(&sigma), tol)),
                Err(_) => fold(&mut c.phase, FAILED),
            }
            let bt = b_of_vertices(quiver, &t);
            for k in 1..=n {
                match minor_closed_form(&t, k) {
                    Ok(m) => fold(&mut c.minors, agree(&m, &highest_weight_minor(&bt, k), tol)),
                    Err(_) => fold(&mut c.minors, FAILED),
                }
            }
            fold(&mut c.symmetry_borel, symmetry(&Parabolic::borel(n), &mut r, tol, draw));
            if let (Some(p), Some(acc)) = (&maximal, c.symmetry_maximal.as_mut()) {
                fold(acc, symmetry(p, &mut r, tol, draw));
            }
        }
        c
    }
}

/// A random fiber point of `Z_P`, then `F_P(b) + F_Q(b⁻¹) = 0`, the image
/// torus part, and `σ_Q ∘ σ_P = id`.
fn symmetry<S: Scalar>(p: &Parabolic, r: &mut ChaCha8Rng, tol: f64, draw: &dyn Fn(&mut ChaCha8Rng) -> S) -> (bool, f64) {
    let d = p.n + 1;
    let mut t = vec![S::one(); d];
    for i in (1..=p.n).rev() {
        let root = if p.levi.contains(&i) { S::one() } else { draw(r) };
        t[i - 1] = t[i].clone() * root;
    }
    let mut u1 = Matrix::<S>::identity(d);
    for (row, col) in unipotent_positions(p) {
        u1[(row, col)] = draw(r);
    }
    let attempt = || -> Result<(bool, f64), mirror_core::mirror::MirrorError> {
        let b = fiber_point(p, &t, &u1)?;
        let (q, t2, binv) = symmetry_map(p, &t, &b)?;
        let mut acc = agree(&(phase_fp(&b, p)? + phase_fp(&binv, &q)?), &S::zero(), tol);
        // Torus parts agree up to the central ẇ₀², so compare root values.
        let image = factorize_borel(&binv, &q)?;
        for k in 0..p.n {
            let lhs = image.t[k].clone() / image.t[k + 1].clone();
            fold(&mut acc, agree(&lhs, &(t2[k].clone() / t2[k + 1].clone()), tol));
        }
        let (p2, t3, b2) = symmetry_map(&q, &t2, &binv)?;
        acc.0 &= p2 == *p;
        for (x, y) in t3.iter().zip(&t).chain(b2.entries().iter().zip(b.entries())) {
            fold(&mut acc, agree(x, y, tol));
        }
        Ok(acc)
    };
    // Points off the big cell are not in the fiber; they are skipped.
    match attempt() {
        Ok(v) => v,
        Err(mirror_core::mirror::MirrorError::NotInOpenSet(_)) => (true, 0.0),
        Err(_) => FAILED,
    }
}

/// Random `T` with `Σ T_ii = 0` and `λ` with `Σ λ = 0`.
fn equivariant_data<S: Scalar>(n: usize, r: &mut ChaCha8Rng, draw: &dyn Fn(&mut ChaCha8Rng) -> S) -> (VertexCoords<S>, Vec<S>) {
    let mut vals: Vec<Vec<S>> = (1..=n + 1).map(|i| (0..i).map(|_| draw(r)).collect()).collect();
    let trace = (1..=n).fold(S::zero(), |acc, i| acc + vals[i - 1][i - 1].clone());
    vals[n][n] = -trace;
    let mut lambda: Vec<S> = (0..n).map(|_| draw(r)).collect();
    let sum = lambda.iter().fold(S::zero(), |acc, l| acc + l.clone());
    lambda.push(-sum);
    (VertexCoords::new(n, |i, j| vals[i - 1][j - 1].clone()), lambda)
}

fn equivariant_exact(quiver: &Quiver, samples: usize, seed: u64) -> (bool, f64) {
    let mut acc = (true, 0.0);
    for s in 0..samples {
        let mut r = rng(seed, (1 << 32) | s as u64);
        let (t, lambda) = equivariant_data::<Q>(quiver.n, &mut r, &|r| nonzero_q(r, 20));
        match equiv_compare_residual(quiver, &t, &lambda) {
            Ok(v) => fold(&mut acc, agree(&v, &Q::from_i64(0), 0.0)),
            Err(_) => fold(&mut acc, FAILED),
        }
    }
    acc
}

fn equivariant_float(quiver: &Quiver, samples: usize, seed: u64, tol: f64) -> (bool, f64) {
    let mut acc = (true, 0.0);
    for s in 0..samples {
        let mut r = rng(seed, (1 << 32) | s as u64);
        // Moderate logarithmic coordinates keep `e^T` well scaled.
        let (t, lambda) =
            equivariant_data::<C>(quiver.n, &mut r, &|r| C::new(r.gen_range(-1.5..1.5), r.gen_range(-1.0..1.0)));
        match equiv_compare_residual_float(quiver, &t, &lambda) {
            Ok(v) => fold(&mut acc, (v <= tol, v)),
            Err(_) => fold(&mut acc, FAILED),
        }
    }
    acc
}
