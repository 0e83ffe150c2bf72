//! `mirror verify peterson`: solves random fibers, checks every record
//! against the Peterson conditions, and compares the three criticality
//! tests on the records and on perturbed points.

use super::solve::{record_rows, solve_fiber, solver_config};
use super::{document, rng};
use crate::report::{self, ReportDocument, Row};
use crate::{parse_scalars, SuiteConfig, SuiteError};
use mirror_core::mirror::{factorize_borel, FiberProblem, FiberSpec, Route, SolveOutcome};
use mirror_core::peterson::{critical_locus_check, stabilizer_check};
use mirror_core::scalar::C;
use rand::Rng;
use serde_json::json;
use std::f64::consts::PI;

/// Tolerance shared by the three verdicts.
pub const VERDICT_TOL: f64 = 1e-8;
/// Perturbed points per fiber.
pub const PERTURBED: usize = 10;

pub fn run(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let n = cfg.rank.unwrap_or(2);
    if n == 0 {
        return Err(SuiteError::Config("--rank must be at least 1".into()));
    }
    let k = n.saturating_sub(cfg.parabolic.len());
    let lambda = parse_scalars(&cfg.lambda, n + 1, 0.0, "lambda", cfg.mode)?;
    let fixed_q = (!cfg.q.is_empty()).then(|| parse_scalars(&cfg.q, k, 1.0, "q", cfg.mode)).transpose()?;
    let fibers = if fixed_q.is_some() { 1 } else { cfg.samples.unwrap_or(3) };
    let solver = solver_config(cfg)?;
    let mut doc = document(cfg);
    for f in 0..fibers {
        let q = match &fixed_q {
            Some(q) => q.clone(),
            None => {
                let mut r = rng(cfg.seed, f as u64);
                (0..k).map(|_| C::from_polar(r.gen_range(0.5..2.0), r.gen_range(-PI..PI))).collect()
            }
        };
        let fiber = FiberSpec::new(n, cfg.parabolic.clone(), q, Some(lambda.clone()))?;
        let outcome = solve_fiber(&fiber, cfg.route, &solver)?;
        let prefix = format!("peterson.fiber[{f}]");
        doc.rows.extend(record_rows(&prefix, &fiber, &outcome, &solver));
        doc.rows.push(three_way_row(&prefix, &fiber, &outcome, cfg)?);
        doc.records.extend(outcome.records.iter().map(report::record));
    }
    Ok(doc)
}

/// Verdicts `(gradient, stabilizer, critical locus)` at a chart point.
pub fn verdicts(problem: &FiberProblem, chart: usize, x: &[C]) -> Result<[bool; 3], SuiteError> {
    let grad = problem.gradient_residual(chart, x)? <= VERDICT_TOL;
    let p = problem.point(chart, x)?;
    let h = &problem.fiber.lambda;
    let stab = stabilizer_check(&p.b, h, VERDICT_TOL).0;
    let locus = critical_locus_check(&factorize_borel(&p.b, &problem.parabolic)?, h, VERDICT_TOL).passed;
    Ok([grad, stab, locus])
}

fn three_way_row(prefix: &str, fiber: &FiberSpec, out: &SolveOutcome, cfg: &SuiteConfig) -> Result<Row, SuiteError> {
    let route = out.records.first().map(|r| r.route).unwrap_or(Route::Quiver);
    let problem = FiberProblem::with_route(fiber, route)?;
    let mut disagreements = Vec::new();
    let mut checked = 0;
    for (k, rec) in out.records.iter().enumerate() {
        let v = verdicts(&problem, rec.chart, &rec.unknowns)?;
        checked += 1;
        if v.iter().any(|&b| b != v[0]) {
            disagreements.push(format!("record {k}: {v:?}"));
        }
        for j in 0..PERTURBED.div_ceil(out.records.len().max(1)) {
            let mut r = rng(cfg.seed, (2 << 32) | ((k as u64) << 16) | j as u64);
            let x: Vec<C> = rec
                .unknowns
                .iter()
                .map(|u| u + C::from_polar(r.gen_range(0.01..0.1) * u.norm().max(1.0), r.gen_range(-PI..PI)))
                .collect();
            // Perturbations that leave the chart are not points of the fiber.
            let Ok(v) = verdicts(&problem, rec.chart, &x) else { continue };
            checked += 1;
            if v.iter().any(|&b| b != v[0]) {
                disagreements.push(format!("record {k}, perturbation {j}: {v:?}"));
            }
        }
    }
    let inputs = json!({ "fiber": report::complexes(&fiber.q), "seed": cfg.seed });
    Ok(Row::exact(format!("{prefix}.three_way"), &inputs, disagreements.is_empty())
        .with_detail(format!("{checked} points, {} disagreements {:?}", disagreements.len(), disagreements)))
}
