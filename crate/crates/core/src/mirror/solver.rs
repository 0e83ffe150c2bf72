//! Fiberwise critical points by multistart Newton iteration on the gradient.
//!
//! For `P = B` the unknowns are the logarithmic vertex coordinates `T_v`,
//! `v ∈ V₋`, of the quiver with the diagonal fixed by `q`. For a general
//! parabolic they are logarithms of the coordinates of the open Deodhar
//! stratum for `(w_P, w₀)`; a chart point `g` is moved into the fiber by
//! `g ẇ₀⁻¹ = L U` followed by a diagonal correction of `L`. One torus chart
//! can miss critical points, so starts are spread over the charts of all
//! reduced words of `w₀`.

use super::borel::{factorize_borel, factorize_bruhat, phase_fp, unipotent_positions, wbar_permutation, Parabolic};
use super::equivariant::jk_weights;
use super::quiver::{beta, build_quiver, phase, w0_inverse, Quiver, QuiverPoint};
use super::{FiberSpec, MirrorError};
use crate::autodiff::Jet2;
use crate::deodhar::{chart_point, open_stratum, Slot, StratumChart};
use crate::matrix::Matrix;
use crate::peterson::{conserved_quantities, critical_locus_check, mu_image, quantum_params, stabilizer_check, CriticalLocusReport};
use crate::scalar::{Scalar, C};
use crate::weyl::{reduced_words, CartanSpec};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    /// Number of starts is this times the fiber dimension.
    pub starts_per_dim: usize,
    pub max_iter: usize,
    /// Gradient tolerance, relative to the size of `q` and `λ`.
    pub tol: f64,
    /// Relative distance below which two solutions coincide.
    pub dedup_radius: f64,
    /// Smallest Hessian singular value still counted as nondegenerate.
    pub degeneracy: f64,
    /// Range of start moduli, sampled log-uniformly.
    pub radius: (f64, f64),
    pub max_step: f64,
    /// Tolerance for the stabilizer and critical-locus checks on records.
    pub check_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 42,
            starts_per_dim: 200,
            max_iter: 100,
            tol: 1e-12,
            dedup_radius: 1e-6,
            degeneracy: 1e-8,
            radius: (0.2, 5.0),
            max_step: 2.0,
            check_tol: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Quiver,
    Deodhar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalRecord {
    pub fiber: FiberSpec,
    pub route: Route,
    /// Index of the chart holding `unknowns`.
    pub chart: usize,
    /// Arrow values σ on the quiver route, stratum coordinates otherwise.
    pub coords: Vec<C>,
    /// The unknowns of the Newton system: logarithms on torus charts,
    /// the coordinates themselves on the unipotent chart.
    pub unknowns: Vec<C>,
    pub value: C,
    pub grad_residual: f64,
    pub hessian_min_sv: f64,
    pub degenerate: bool,
    pub b: Matrix<C>,
    pub torus: Vec<C>,
    pub toda: Matrix<C>,
    pub conserved: Vec<C>,
    pub q_extracted: Vec<C>,
    pub stabilizer_residual: f64,
    pub locus: CriticalLocusReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub records: Vec<CriticalRecord>,
    pub starts: usize,
    pub converged: usize,
    pub diagnostics: Vec<String>,
}

enum RouteData {
    Quiver { quiver: Quiver, diagonal: Vec<C>, nets: Vec<C> },
    /// Torus charts, then the unipotent chart; `perm` is that of `w̄`.
    Deodhar { charts: Vec<Chart>, perm: Vec<usize> },
}

enum Chart {
    /// Open Deodhar stratum of one reduced word of `w₀`, in logarithms.
    Torus(StratumChart),
    /// The free entries of `u₁ ∈ U₊ ∩ w̄U₋w̄⁻¹`: the fiber is the open set
    /// where `u₁ t w̄` has an LU factorization, so this chart covers it.
    Unipotent(Vec<(usize, usize)>),
}

/// Everything needed to evaluate the phase on one fiber.
pub struct FiberProblem {
    pub fiber: FiberSpec,
    pub parabolic: Parabolic,
    route: RouteData,
}

/// A point of the fiber together with its data on the Borel side.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub coords: Vec<C>,
    pub b: Matrix<C>,
    pub torus: Vec<C>,
    pub value: C,
}

/// Reduced word of `w₀`: `(n, n−1, …, k)` for `k = 1, …, n`, concatenated.
fn staircase_word(n: usize) -> Vec<usize> {
    (1..=n).flat_map(|k| (k..=n).rev()).collect()
}

impl FiberProblem {
    /// The quiver route for the Borel, the Deodhar route otherwise.
    pub fn new(fiber: &FiberSpec) -> Result<Self, MirrorError> {
        let route = if fiber.parabolic.is_empty() { Route::Quiver } else { Route::Deodhar };
        Self::with_route(fiber, route)
    }

    pub fn with_route(fiber: &FiberSpec, route: Route) -> Result<Self, MirrorError> {
        fiber.validate()?;
        let parabolic = Parabolic::new(fiber.n, fiber.parabolic.clone())?;
        let route = match route {
            Route::Quiver => {
                if !fiber.parabolic.is_empty() {
                    return Err(MirrorError::Config("the quiver route needs P = B".into()));
                }
                let quiver = build_quiver(fiber.n)?;
                let nets = jk_weights(&quiver, &fiber.lambda)?.net_lower;
                RouteData::Quiver { quiver, diagonal: fiber.torus(), nets }
            }
            Route::Deodhar => {
                let spec = CartanSpec::a(fiber.n);
                let words = reduced_words(&spec, &staircase_word(fiber.n)).map_err(|e| MirrorError::Config(e.to_string()))?;
                let rep = parabolic.rep();
                let mut charts = words
                    .iter()
                    .map(|w| Ok(Chart::Torus(open_stratum(&rep, w, &parabolic.wp_word())?)))
                    .collect::<Result<Vec<_>, MirrorError>>()?;
                charts.push(Chart::Unipotent(unipotent_positions(&parabolic)));
                RouteData::Deodhar { charts, perm: wbar_permutation(&parabolic) }
            }
        };
        Ok(FiberProblem { fiber: fiber.clone(), parabolic, route })
    }

    pub fn route(&self) -> Route {
        match self.route {
            RouteData::Quiver { .. } => Route::Quiver,
            RouteData::Deodhar { .. } => Route::Deodhar,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.route {
            RouteData::Quiver { quiver, .. } => quiver.lower.len(),
            RouteData::Deodhar { charts, .. } => match &charts[0] {
                Chart::Torus(c) => c.dim(),
                Chart::Unipotent(p) => p.len(),
            },
        }
    }

    /// Number of coordinate charts the unknowns can live in.
    pub fn charts(&self) -> usize {
        match &self.route {
            RouteData::Quiver { .. } => 1,
            RouteData::Deodhar { charts, .. } => charts.len(),
        }
    }

    /// Chart used by start `k`: on the Deodhar route every other start goes
    /// to the unipotent chart, the rest cycle through the torus charts.
    fn chart_of_start(&self, k: usize) -> usize {
        match self.charts() {
            1 => 0,
            n if k % 2 == 0 => n - 1,
            n => (k / 2) % (n - 1),
        }
    }

    fn check_chart(&self, chart: usize, x: &[C]) -> Result<(), MirrorError> {
        if chart >= self.charts() {
            return Err(MirrorError::Domain(format!("no chart {chart}")));
        }
        if x.len() != self.dim() {
            return Err(MirrorError::Domain(format!("expected {} coordinates, got {}", self.dim(), x.len())));
        }
        Ok(())
    }

    /// Arrow values from logarithmic lower coordinates.
    fn sigma<S: Scalar>(&self, x: &[S], exp: impl Fn(&S) -> S, lift: impl Fn(C) -> S) -> QuiverPoint<S> {
        let RouteData::Quiver { quiver, diagonal, .. } = &self.route else { unreachable!() };
        let value = |v: (usize, usize)| {
            if v.0 == v.1 {
                lift(diagonal[v.0 - 1])
            } else {
                exp(&x[quiver.lower_index(v).expect("lower vertex")])
            }
        };
        QuiverPoint { n: quiver.n, sigma: quiver.arrows.iter().map(|a| value(a.head) / value(a.tail)).collect() }
    }

    /// `b` and the superdiagonals of `u₁`, `u₂` from chart coordinates.
    fn deodhar_point<S: Scalar>(
        &self,
        chart: usize,
        coords: &[S],
        lift: impl Fn(C) -> S,
    ) -> Result<(Matrix<S>, Vec<S>, Vec<S>), MirrorError> {
        let RouteData::Deodhar { charts, perm } = &self.route else { unreachable!() };
        match &charts[chart] {
            Chart::Torus(c) => self.torus_point(c, perm, coords, lift),
            Chart::Unipotent(positions) => self.unipotent_point(positions, coords, lift),
        }
    }

    /// `u₁ t w̄ = L·U`; then `b = L·diag(U)` and `u₂ = diag(U)⁻¹ U`.
    fn unipotent_point<S: Scalar>(
        &self,
        positions: &[(usize, usize)],
        coords: &[S],
        lift: impl Fn(C) -> S,
    ) -> Result<(Matrix<S>, Vec<S>, Vec<S>), MirrorError> {
        let n = self.fiber.n + 1;
        let mut u1 = Matrix::<S>::identity(n);
        for (&(r, c), x) in positions.iter().zip(coords) {
            u1[(r, c)] = x.clone();
        }
        let t: Vec<S> = self.fiber.torus().into_iter().map(&lift).collect();
        let m = u1.mul(&Matrix::diag(&t)).mul(&self.parabolic.wbar());
        let (l, u) = m.lu().ok_or_else(|| MirrorError::NotInOpenSet("u1 t w is outside the big cell".into()))?;
        let b = Matrix::from_fn(n, |r, c| l[(r, c)].clone() * u[(c, c)].clone());
        let sup1 = (0..n - 1).map(|i| u1[(i, i + 1)].clone()).collect();
        let sup2 = (0..n - 1).map(|i| u[(i, i + 1)].clone() / u[(i, i)].clone()).collect();
        Ok((b, sup1, sup2))
    }

    /// A stratum point `g` with `g ẇ₀⁻¹ = L U`, moved to the fiber's torus
    /// part: `b = L·D` where `D = w̄⁻¹ (t t₀⁻¹) w̄` and `u₂ ↦ D⁻¹ u₂ D`.
    fn torus_point<S: Scalar>(
        &self,
        chart: &StratumChart,
        perm: &[usize],
        coords: &[S],
        lift: impl Fn(C) -> S,
    ) -> Result<(Matrix<S>, Vec<S>, Vec<S>), MirrorError> {
        let rep = self.parabolic.rep();
        let g = chart_point(chart, coords)?;
        let (l, _) = g
            .mul(&w0_inverse(&rep))
            .lu()
            .ok_or_else(|| MirrorError::NotInOpenSet("chart point outside the big cell".into()))?;
        let fact = factorize_bruhat(&l, &self.parabolic)?;
        let target = self.fiber.torus();
        let d: Vec<S> = perm.iter().map(|&r| lift(target[r]) / fact.t[r].clone()).collect();
        let n = d.len();
        let b = Matrix::from_fn(n, |r, c| l[(r, c)].clone() * d[c].clone());
        let sup1 = (0..n - 1).map(|i| fact.u1[(i, i + 1)].clone()).collect();
        let sup2 = (0..n - 1).map(|i| fact.u2[(i, i + 1)].clone() * d[i + 1].clone() / d[i].clone()).collect();
        Ok((b, sup1, sup2))
    }

    fn lift_coords<S: Scalar>(&self, chart: usize, x: &[S], exp: impl Fn(&S) -> S) -> Vec<S> {
        let RouteData::Deodhar { charts, .. } = &self.route else { unreachable!() };
        match &charts[chart] {
            Chart::Torus(c) => c
                .slots()
                .iter()
                .zip(x)
                .map(|((_, slot), s)| match slot {
                    Slot::Torus => exp(s),
                    Slot::Affine => s.clone(),
                })
                .collect(),
            Chart::Unipotent(_) => x.to_vec(),
        }
    }

    /// `true` if the unknowns of `chart` are logarithms.
    pub fn is_logarithmic(&self, chart: usize) -> bool {
        match &self.route {
            RouteData::Quiver { .. } => true,
            RouteData::Deodhar { charts, .. } => matches!(charts[chart], Chart::Torus(_)),
        }
    }

    /// The phase plus its equivariant term, with first and second
    /// derivatives in the logarithmic unknowns of the given chart.
    pub fn objective(&self, chart: usize, x: &[C]) -> Result<Jet2<C>, MirrorError> {
        self.check_chart(chart, x)?;
        let d = self.dim();
        let vars: Vec<Jet2<C>> = x.iter().enumerate().map(|(k, v)| Jet2::var(*v, k, d)).collect();
        let lift = |c: C| Jet2::constant(c);
        match &self.route {
            RouteData::Quiver { nets, .. } => {
                let sigma = self.sigma(&vars, |s| s.exp(), lift);
                let mut w = phase(&sigma);
                for (net, v) in nets.iter().zip(&vars) {
                    w = w + Jet2::constant(*net) * v.clone();
                }
                Ok(w)
            }
            RouteData::Deodhar { .. } => {
                let coords = self.lift_coords(chart, &vars, |s| s.exp());
                let (b, sup1, sup2) = self.deodhar_point(chart, &coords, lift)?;
                // F(u·ρ) = −Σ u_{i,i+1} for unipotent upper-triangular u
                let mut w = Jet2::constant(C::new(0.0, 0.0));
                for (a, c) in sup1.into_iter().zip(sup2) {
                    w = w + a - c;
                }
                if self.fiber.is_equivariant() {
                    for (k, l) in self.fiber.lambda.iter().enumerate() {
                        w = w + Jet2::constant(*l) * b[(k, k)].ln();
                    }
                }
                Ok(w)
            }
        }
    }

    /// Evaluate the fiber point behind the logarithmic unknowns `x`.
    pub fn point(&self, chart: usize, x: &[C]) -> Result<FiberPoint, MirrorError> {
        self.check_chart(chart, x)?;
        match &self.route {
            RouteData::Quiver { quiver, diagonal, .. } => {
                let sigma = self.sigma(x, |s| s.exp(), |c| c);
                let b = beta(quiver, &sigma)?;
                Ok(FiberPoint { value: phase(&sigma), coords: sigma.sigma, b, torus: diagonal.clone() })
            }
            RouteData::Deodhar { .. } => {
                let coords = self.lift_coords(chart, x, |s| s.exp());
                let (b, _, _) = self.deodhar_point(chart, &coords, |c| c)?;
                let value = phase_fp(&b, &self.parabolic)?;
                Ok(FiberPoint { coords, b, torus: self.fiber.torus(), value })
            }
        }
    }

    fn scale(&self) -> f64 {
        self.fiber.q.iter().chain(&self.fiber.lambda).map(|v| v.norm()).fold(1.0, f64::max)
    }

    fn residual_of(&self, j: &Jet2<C>) -> f64 {
        j.g.iter().map(|g| g.norm()).fold(0.0, f64::max) / self.scale()
    }

    /// Largest gradient entry, relative to the size of the fiber parameters.
    pub fn gradient_residual(&self, chart: usize, x: &[C]) -> Result<f64, MirrorError> {
        Ok(self.residual_of(&self.objective(chart, x)?))
    }

    fn hessian(&self, j: &Jet2<C>) -> DMatrix<C> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |a, b| j.hess(a, b))
    }

    fn newton(&self, chart: usize, mut x: Vec<C>, cfg: &SolverConfig) -> Result<Vec<C>, &'static str> {
        for _ in 0..cfg.max_iter {
            let j = self.objective(chart, &x).map_err(|_| "left the chart")?;
            if j.g.len() != x.len() {
                return Err("objective is constant");
            }
            if self.residual_of(&j) <= cfg.tol {
                return Ok(x);
            }
            let g = DVector::from_column_slice(&j.g);
            let mut step = self.hessian(&j).lu().solve(&(-g)).ok_or("singular Hessian")?;
            let size = step.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if !size.is_finite() {
                return Err("non-finite step");
            }
            if size > cfg.max_step {
                step *= C::new(cfg.max_step / size, 0.0);
            }
            let log = self.is_logarithmic(chart);
            for (xi, s) in x.iter_mut().zip(step.iter()) {
                *xi += s;
                if log {
                    // Keep the imaginary part on one sheet.
                    xi.im = (xi.im + PI).rem_euclid(2.0 * PI) - PI;
                }
            }
            let size = |v: &C| if log { v.re.abs() } else { v.norm().ln() };
            if x.iter().any(|v| size(v) > 40.0) {
                return Err("diverged");
            }
        }
        Err("no convergence")
    }

    fn start(&self, cfg: &SolverConfig, chart: usize, index: usize) -> Vec<C> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        let (lo, hi) = (cfg.radius.0.ln(), cfg.radius.1.ln());
        let log = self.is_logarithmic(chart);
        (0..self.dim())
            .map(|_| {
                let z = C::new(rng.gen_range(lo..hi), rng.gen_range(-PI..PI));
                if log {
                    z
                } else {
                    z.exp()
                }
            })
            .collect()
    }

    /// Full record at a point, including the Peterson checks.
    pub fn record(&self, chart: usize, x: &[C], cfg: &SolverConfig) -> Result<CriticalRecord, MirrorError> {
        let j = self.objective(chart, x)?;
        let hessian_min_sv = self.hessian(&j).singular_values().iter().copied().fold(f64::INFINITY, f64::min);
        let p = self.point(chart, x)?;
        let fact = factorize_borel(&p.b, &self.parabolic)?;
        let h = &self.fiber.lambda;
        let toda = mu_image(&fact, h);
        Ok(CriticalRecord {
            fiber: self.fiber.clone(),
            route: self.route(),
            chart,
            coords: p.coords,
            unknowns: x.to_vec(),
            value: p.value,
            grad_residual: self.residual_of(&j),
            hessian_min_sv,
            degenerate: hessian_min_sv < cfg.degeneracy,
            conserved: conserved_quantities(&toda),
            q_extracted: quantum_params(&fact, h),
            stabilizer_residual: stabilizer_check(&p.b, h, cfg.check_tol).1,
            locus: critical_locus_check(&fact, h, cfg.check_tol),
            toda,
            b: p.b,
            torus: p.torus,
        })
    }
}

fn same_point(a: &Matrix<C>, b: &Matrix<C>, radius: f64) -> bool {
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    a.sub(b).max_abs() <= radius * scale
}

fn cmp_c(a: &C, b: &C) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn solve_critical(fiber: &FiberSpec, cfg: &SolverConfig) -> Result<SolveOutcome, MirrorError> {
    solve_with(&FiberProblem::new(fiber)?, cfg)
}

pub fn solve_with(problem: &FiberProblem, cfg: &SolverConfig) -> Result<SolveOutcome, MirrorError> {
    if cfg.starts_per_dim == 0 || cfg.max_iter == 0 {
        return Err(MirrorError::Config("solver needs at least one start and one iteration".into()));
    }
    let starts = cfg.starts_per_dim * problem.dim();
    let results: Vec<(usize, Result<Vec<C>, &'static str>)> = (0..starts)
        .into_par_iter()
        .map(|k| {
            let chart = problem.chart_of_start(k);
            (chart, problem.newton(chart, problem.start(cfg, chart, k), cfg))
        })
        .collect();
    // Solutions from different charts are compared through `b`, which is
    // intrinsic to the fiber point.
    let mut unique: Vec<(usize, Vec<C>, Matrix<C>)> = Vec::new();
    let mut failures = std::collections::BTreeMap::<String, usize>::new();
    let mut converged = 0;
    for (chart, r) in results {
        let found = r.map_err(String::from).and_then(|x| match problem.point(chart, &x) {
            Ok(p) => Ok((x, p.b)),
            Err(e) => Err(e.to_string()),
        });
        match found {
            Ok((x, b)) => {
                converged += 1;
                if !unique.iter().any(|(_, _, u)| same_point(u, &b, cfg.dedup_radius)) {
                    unique.push((chart, x, b));
                }
            }
            Err(why) => *failures.entry(why).or_default() += 1,
        }
    }
    let mut diagnostics: Vec<String> = failures.iter().map(|(k, v)| format!("{v} starts: {k}")).collect();
    let mut records = Vec::new();
    for rec in unique.par_iter().map(|(c, x, _)| problem.record(*c, x, cfg)).collect::<Vec<_>>() {
        match rec {
            Ok(r) => records.push(r),
            Err(e) => diagnostics.push(format!("dropped a solution: {e}")),
        }
    }
    records.sort_by(|a, b| {
        cmp_c(&a.value, &b.value).then_with(|| {
            a.b.entries()
                .iter()
                .zip(b.b.entries())
                .map(|(x, y)| cmp_c(x, y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    if records.is_empty() {
        diagnostics.push("no start converged".into());
    }
    Ok(SolveOutcome { records, starts, converged, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    fn small() -> SolverConfig {
        SolverConfig { starts_per_dim: 40, ..Default::default() }
    }

    #[test]
    fn staircase_is_w0() {
        assert_eq!(staircase_word(3), vec![3, 2, 1, 3, 2, 3]);
    }

    #[test]
    fn p1_two_points() {
        let fiber = FiberSpec::new(1, vec![], vec![c(1.0)], None).unwrap();
        let out = solve_critical(&fiber, &small()).unwrap();
        assert_eq!(out.records.len(), 2);
        assert!((out.records[0].value - c(-2.0)).norm() < 1e-10);
        assert!((out.records[1].value - c(2.0)).norm() < 1e-10);
        assert!(out.records[1].coords.iter().all(|s| (s - c(1.0)).norm() < 1e-10));
    }

    #[test]
    fn p1_equivariant() {
        let fiber = FiberSpec::new(1, vec![], vec![c(1.0)], Some(vec![c(1.0), c(-1.0)])).unwrap();
        let out = solve_critical(&fiber, &small()).unwrap();
        let mut sc: Vec<f64> = out.records.iter().map(|r| r.coords[0].re).collect();
        sc.sort_by(f64::total_cmp);
        assert_eq!(sc.len(), 2);
        assert!((sc[0] - (-1.0 - 2f64.sqrt())).abs() < 1e-10);
        assert!((sc[1] - (-1.0 + 2f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn p1_routes_agree() {
        let fiber = FiberSpec::new(1, vec![], vec![C::new(0.5, 1.5)], None).unwrap();
        let a = solve_with(&FiberProblem::with_route(&fiber, Route::Quiver).unwrap(), &small()).unwrap();
        let b = solve_with(&FiberProblem::with_route(&fiber, Route::Deodhar).unwrap(), &small()).unwrap();
        assert_eq!(a.records.len(), b.records.len());
        for (x, y) in a.records.iter().zip(&b.records) {
            assert!((x.value - y.value).norm() < 1e-9);
        }
    }

    #[test]
    fn deterministic() {
        let fiber = FiberSpec::new(2, vec![], vec![C::new(0.7, 0.2), C::new(1.3, -0.4)], None).unwrap();
        let cfg = SolverConfig { starts_per_dim: 20, ..Default::default() };
        let a = solve_critical(&fiber, &cfg).unwrap();
        let b = solve_critical(&fiber, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_starts_is_a_config_error() {
        let fiber = FiberSpec::new(1, vec![], vec![c(1.0)], None).unwrap();
        let cfg = SolverConfig { starts_per_dim: 0, ..Default::default() };
        assert!(matches!(solve_critical(&fiber, &cfg), Err(MirrorError::Config(_))));
    }
}
