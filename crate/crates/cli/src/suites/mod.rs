pub mod braid;
pub mod compare;
pub mod deodhar;
pub mod peterson;
pub mod solve;

use crate::report::ReportDocument;
use crate::SuiteConfig;
use mirror_core::scalar::{Scalar, Q};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The suite generator, on its own stream for each sample.
pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `±a/b` with `1 ≤ a, b ≤ bound`.
pub(crate) fn nonzero_q(rng: &mut impl Rng, bound: i64) -> Q {
    let a = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Q::new(BigInt::from(a), BigInt::from(rng.gen_range(1..=bound)))
}

/// `true` and the residual when `a = b`: exactly for exact scalars,
/// otherwise within `tol` relative to the larger side.
pub(crate) fn agree<S: Scalar>(a: &S, b: &S, tol: f64) -> (bool, f64) {
    let d = (a.clone() - b.clone()).magnitude();
    if S::is_exact() {
        ((a.clone() - b.clone()).is_zero(), d)
    } else {
        let r = d / a.magnitude().max(b.magnitude()).max(1.0);
        (r <= tol, r)
    }
}

pub(crate) fn document(cfg: &SuiteConfig) -> ReportDocument {
    ReportDocument::new(serde_json::to_value(cfg).expect("config serializes"))
}
