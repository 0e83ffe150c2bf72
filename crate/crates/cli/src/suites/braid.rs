//! `mirror verify braid`: one row per transform C₀…C₁₅, checking the group
//! identity and the Jacobian sign on positive rational samples.

use super::{document, rng};
use crate::report::{self, ReportDocument, Row};
use crate::{SuiteConfig, SuiteError};
use mirror_core::braid::{jacobian_check, verify_identity, TransformId};
use mirror_core::deodhar::random_positive;
use num_traits::One;
use serde_json::json;

pub fn run(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let samples = cfg.samples.unwrap_or(50);
    let mut doc = document(cfg);
    for tr in TransformId::ALL {
        let rep = tr.default_rep();
        let mut failures = Vec::new();
        for s in 0..samples {
            let mut r = rng(cfg.seed, ((tr.index() as u64) << 32) | s as u64);
            let sample: Vec<_> = (0..tr.arity()).map(|_| random_positive(&mut r, 1000)).collect();
            let identity = verify_identity(tr, &rep, &sample);
            let jac = jacobian_check(tr, &sample);
            let ok = matches!(identity, Ok(true))
                && matches!(&jac, Ok((ratio, sign)) if *sign == tr.sign() && (ratio.clone() * ratio.clone()).is_one());
            if !ok {
                failures.push(json!({ "sample": s, "coords": report::rationals(&sample) }));
            }
        }
        let inputs = json!({ "transform": tr.name(), "samples": samples, "seed": cfg.seed });
        let mut row = Row::exact(format!("braid.{}", tr.name()), &inputs, failures.is_empty()).with_detail(format!(
            "{} → {}, sign {:+}",
            tr.pattern().0,
            tr.pattern().1,
            tr.sign()
        ));
        if !failures.is_empty() {
            row = row.with_detail(format!("{} of {samples} samples failed: {}", failures.len(), json!(failures)));
        }
        doc.rows.push(row);
    }
    Ok(doc)
}
