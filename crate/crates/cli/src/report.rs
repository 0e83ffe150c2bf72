//! The JSON report: per-check rows, a summary and optional solver records.
//!
//! Keys are sorted (serde_json's default map is ordered), complex numbers
//! are `{"re", "im"}` and rationals `{"num", "den"}`, both with decimal
//! strings. Nothing time-dependent is written, so equal configurations
//! give equal bytes.

use mirror_core::matrix::Matrix;
use mirror_core::mirror::{CriticalRecord, Route};
use mirror_core::scalar::{C, Q};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub inputs_digest: String,
    pub status: Status,
    /// Largest residual seen; absent for exact checks.
    pub residual: Option<f64>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Row {
    pub fn exact(name: impl Into<String>, inputs: &Value, ok: bool) -> Self {
        Row {
            name: name.into(),
            inputs_digest: digest(inputs),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            exact: true,
            detail: None,
        }
    }

    pub fn float(name: impl Into<String>, inputs: &Value, residual: f64, tol: f64) -> Self {
        Row {
            name: name.into(),
            inputs_digest: digest(inputs),
            status: if residual <= tol { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            exact: false,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub degenerate: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub config: Value,
    pub rows: Vec<Row>,
    pub records: Vec<Value>,
    /// Suite-specific payload, such as enumerated subexpressions.
    pub extra: Option<Value>,
}

impl ReportDocument {
    pub fn new(config: Value) -> Self {
        ReportDocument { config, rows: Vec::new(), records: Vec::new(), extra: None }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.rows {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Degenerate => s.degenerate += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    /// Every row that is not skipped passed.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped))
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "tool": { "name": "mirror", "version": env!("CARGO_PKG_VERSION") },
            "config": self.config,
            "rows": self.rows,
            "summary": self.summary(),
            "records": self.records,
        });
        if let Some(extra) = &self.extra {
            v["extra"] = extra.clone();
        }
        v
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn serialize(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(&self.to_value()).expect("report is valid JSON");
        out.push(b'\n');
        out
    }
}

/// First 16 hex digits of the SHA-256 of the canonical JSON of `inputs`.
pub fn digest(inputs: &Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("valid JSON");
    Sha256::digest(&bytes).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn complex(c: &C) -> Value {
    json!({ "re": format!("{:?}", c.re), "im": format!("{:?}", c.im) })
}

pub fn rational(q: &Q) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn complexes(v: &[C]) -> Value {
    Value::Array(v.iter().map(complex).collect())
}

pub fn rationals(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn complex_matrix(m: &Matrix<C>) -> Value {
    let n = m.dim();
    Value::Array((0..n).map(|r| Value::Array((0..n).map(|c| complex(&m[(r, c)])).collect())).collect())
}

pub fn rational_matrix(m: &Matrix<Q>) -> Value {
    let n = m.dim();
    Value::Array((0..n).map(|r| Value::Array((0..n).map(|c| rational(&m[(r, c)])).collect())).collect())
}

pub fn record(r: &CriticalRecord) -> Value {
    json!({
        "route": match r.route { Route::Quiver => "quiver", Route::Deodhar => "deodhar" },
        "chart": r.chart,
        "coords": complexes(&r.coords),
        "unknowns": complexes(&r.unknowns),
        "value": complex(&r.value),
        "grad_residual": r.grad_residual,
        "hessian_min_sv": r.hessian_min_sv,
        "degenerate": r.degenerate,
        "b": complex_matrix(&r.b),
        "torus": complexes(&r.torus),
        "toda": complex_matrix(&r.toda),
        "conserved": complexes(&r.conserved),
        "q_extracted": complexes(&r.q_extracted),
        "stabilizer_residual": r.stabilizer_residual,
        "locus": {
            "vanishing_residual": r.locus.vanishing_residual,
            "root_residual": r.locus.root_residual,
            "passed": r.locus.passed,
        },
        "fiber": {
            "n": r.fiber.n,
            "parabolic": r.fiber.parabolic,
            "q": complexes(&r.fiber.q),
            "lambda": complexes(&r.fiber.lambda),
            "hbar": format!("{:?}", r.fiber.hbar),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mirror_core::scalar::q;

    #[test]
    fn scalar_encodings() {
        assert_eq!(rational(&q(1, 3)), json!({"num": "1", "den": "3"}));
        assert_eq!(complex(&C::new(-2.0, 0.0)), json!({"re": "-2.0", "im": "0.0"}));
    }

    #[test]
    fn keys_are_sorted() {
        let doc = ReportDocument::new(json!({"zeta": 1, "alpha": 2}));
        let text = String::from_utf8(doc.serialize()).unwrap();
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert!(text.find("\"config\"").unwrap() < text.find("\"tool\"").unwrap());
    }

    #[test]
    fn skipped_rows_do_not_fail() {
        let mut doc = ReportDocument::new(json!({}));
        doc.rows.push(Row::exact("a", &json!(1), true).with_status(Status::Skipped));
        assert!(doc.passed());
        doc.rows.push(Row::float("b", &json!(2), 1.0, 0.5));
        assert!(!doc.passed());
        assert_eq!(doc.summary(), Summary { pass: 0, fail: 1, degenerate: 0, skipped: 1 });
    }
}
