//! `mirror solve`: critical points of one fiber, with the Peterson checks
//! on every record.

use super::document;
use crate::report::{self, ReportDocument, Row, Status};
use crate::{parse_scalars, RouteChoice, SuiteConfig, SuiteError};
use mirror_core::mirror::{solve_with, FiberProblem, FiberSpec, Route, SolveOutcome, SolverConfig};
use mirror_core::peterson::expected_conserved;
use serde_json::json;

/// Relative tolerance for the extracted quantum parameters.
pub const Q_TOL: f64 = 1e-10;

pub fn run(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let n = cfg.rank.unwrap_or(1);
    if n == 0 {
        return Err(SuiteError::Config("--rank must be at least 1".into()));
    }
    let k = n.saturating_sub(cfg.parabolic.len());
    let q = parse_scalars(&cfg.q, k, 1.0, "q", cfg.mode)?;
    let lambda = parse_scalars(&cfg.lambda, n + 1, 0.0, "lambda", cfg.mode)?;
    let fiber = FiberSpec::new(n, cfg.parabolic.clone(), q, Some(lambda))?;
    let solver = solver_config(cfg)?;
    let outcome = solve_fiber(&fiber, cfg.route, &solver)?;
    let mut doc = document(cfg);
    doc.rows = record_rows("solve", &fiber, &outcome, &solver);
    doc.records = outcome.records.iter().map(report::record).collect();
    doc.extra = Some(json!({
        "starts": outcome.starts,
        "converged": outcome.converged,
        "diagnostics": outcome.diagnostics,
    }));
    Ok(doc)
}

pub(crate) fn solver_config(cfg: &SuiteConfig) -> Result<SolverConfig, SuiteError> {
    let mut s = SolverConfig { seed: cfg.seed, ..Default::default() };
    if let Some(k) = cfg.starts_per_dim {
        s.starts_per_dim = k;
    }
    if let Some(t) = cfg.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(SuiteError::Config("--tol must be positive".into()));
        }
        s.check_tol = t;
    }
    Ok(s)
}

pub(crate) fn solve_fiber(fiber: &FiberSpec, route: RouteChoice, cfg: &SolverConfig) -> Result<SolveOutcome, SuiteError> {
    let problem = match route {
        RouteChoice::Auto => FiberProblem::new(fiber)?,
        RouteChoice::Quiver => FiberProblem::with_route(fiber, Route::Quiver)?,
        RouteChoice::Deodhar => FiberProblem::with_route(fiber, Route::Deodhar)?,
    };
    Ok(solve_with(&problem, cfg)?)
}

/// `(n+1)! / ∏ m!` over the blocks of the Levi factor.
pub fn expected_count(n: usize, levi: &[usize]) -> usize {
    let fact = |m: usize| (1..=m).product::<usize>();
    let mut blocks = Vec::new();
    let mut run = 1;
    for i in 1..=n {
        if levi.contains(&i) {
            run += 1;
        } else {
            blocks.push(run);
            run = 1;
        }
    }
    blocks.push(run);
    fact(n + 1) / blocks.into_iter().map(fact).product::<usize>()
}

/// The count row and one row per record: stabilizer, critical locus,
/// extracted `q` and conserved quantities against `∏(x + λᵢ)`.
pub(crate) fn record_rows(prefix: &str, fiber: &FiberSpec, out: &SolveOutcome, cfg: &SolverConfig) -> Vec<Row> {
    let inputs = json!({
        "n": fiber.n,
        "parabolic": fiber.parabolic,
        "q": report::complexes(&fiber.q),
        "lambda": report::complexes(&fiber.lambda),
        "seed": cfg.seed,
    });
    let expected = expected_count(fiber.n, &fiber.parabolic);
    let nondegenerate = out.records.iter().filter(|r| !r.degenerate).count();
    let mut rows = vec![Row::exact(format!("{prefix}.count"), &inputs, nondegenerate == expected)
        .with_detail(format!("{nondegenerate} nondegenerate of {} found, expected {expected}", out.records.len()))];
    let lambda_scale = fiber.lambda.iter().map(|l| l.norm()).fold(1.0, f64::max);
    let conserved = expected_conserved(&fiber.lambda);
    for (k, r) in out.records.iter().enumerate() {
        let stab = r.stabilizer_residual / lambda_scale;
        let qerr = r.q_extracted.iter().zip(&fiber.q).map(|(a, b)| (a - b).norm() / b.norm().max(1.0)).fold(0.0, f64::max);
        let cp = r.conserved.iter().zip(&conserved).map(|(a, b)| (a - b).norm() / b.norm().max(1.0)).fold(0.0, f64::max);
        let ok = stab <= cfg.check_tol && qerr <= Q_TOL && cp <= cfg.check_tol && r.locus.passed;
        let row = Row::float(format!("{prefix}.record[{k}]"), &json!([inputs, k]), stab.max(cp), cfg.check_tol)
            .with_status(if r.degenerate {
                Status::Degenerate
            } else if ok {
                Status::Pass
            } else {
                Status::Fail
            })
            .with_detail(format!("q error {qerr:.1e}, locus {}", if r.locus.passed { "ok" } else { "violated" }));
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(expected_count(1, &[]), 2);
        assert_eq!(expected_count(2, &[]), 6);
        assert_eq!(expected_count(2, &[2]), 3);
        assert_eq!(expected_count(3, &[1, 3]), 6);
        assert_eq!(expected_count(3, &[2, 3]), 4);
    }
}
