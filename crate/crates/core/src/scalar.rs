//! Scalar fields used throughout: exact rationals, double-precision complex
//! numbers and small prime fields.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Q = BigRational;
pub type C = Complex64;

/// Relative threshold below which a floating entry counts as zero in
/// structural checks (pivot tests, triangularity).
pub const FLOAT_NEGLIGIBLE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_q(v: &Q) -> Self;
    /// Absolute value of the primal part, as a float.
    fn magnitude(&self) -> f64;
    /// `true` for scalars with exact equality (rationals, prime fields).
    fn is_exact() -> bool;

    /// Zero test used by elimination: exact for exact fields, relative to
    /// `scale` for floating ones.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.magnitude() <= FLOAT_NEGLIGIBLE * scale.max(1.0)
        }
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r * self.clone();
        }
        r
    }
}

impl Scalar for Q {
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn from_q(v: &Q) -> Self {
        v.clone()
    }
    fn magnitude(&self) -> f64 {
        q_to_f64(self).abs()
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for C {
    fn from_i64(v: i64) -> Self {
        C::new(v as f64, 0.0)
    }
    fn from_q(v: &Q) -> Self {
        C::new(q_to_f64(v), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_exact() -> bool {
        false
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_to_f64(v: &Q) -> f64 {
    // Large numerators and denominators overflow a plain `to_f64` division.
    match (v.numer().to_f64(), v.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = v.numer().bits().max(v.denom().bits()) as i64 - 60;
            let n = (v.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
            let d = (v.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Parses `a`, `-a/b` or a decimal such as `0.25` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let frac: BigInt = fp.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = Q::new(whole * &den + frac, den);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Parses a complex literal: `3`, `-1.5`, `2i`, `3+4i`, `1-0.5i`.
pub fn parse_c(s: &str) -> Option<C> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not at the start or after an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' && bytes[k - 1] != b'E' {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => t.parse::<f64>().ok()?,
        };
        let re = re.parse::<f64>().ok()?;
        return Some(C::new(re, im));
    }
    s.parse::<f64>().ok().map(|re| C::new(re, 0.0))
}

pub fn q_abs(v: &Q) -> Q {
    v.abs()
}

/// Element of the prime field F_P.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }

    /// Panics on zero, like integer division.
    pub fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{}", P);
        self.pow(P - 2)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}
impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}
impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
}
impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}
impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}
impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}
impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn from_q(v: &Q) -> Self {
        let p = BigInt::from(P);
        let n = ((v.numer() % &p) + &p) % &p;
        let d = ((v.denom() % &p) + &p) % &p;
        Fp(n.to_u64().unwrap()) / Fp(d.to_u64().unwrap())
    }
    fn magnitude(&self) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            1.0
        }
    }
    fn is_exact() -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("1/3"), Some(q(1, 3)));
        assert_eq!(parse_q("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_q("7"), Some(qi(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn parse_complex() {
        assert_eq!(parse_c("3+4i"), Some(C::new(3.0, 4.0)));
        assert_eq!(parse_c("-1"), Some(C::new(-1.0, 0.0)));
        assert_eq!(parse_c("2i"), Some(C::new(0.0, 2.0)));
        assert_eq!(parse_c("1-i"), Some(C::new(1.0, -1.0)));
        assert_eq!(parse_c("1e-3-2e-1i"), Some(C::new(1e-3, -0.2)));
        assert_eq!(parse_c(""), None);
    }

    #[test]
    fn prime_field() {
        let a = Fp::<7>::new(3);
        assert_eq!(a * a.inv(), Fp::one());
        assert_eq!(Fp::<7>::new(-1), Fp(6));
        assert_eq!(Fp::<7>::from_q(&q(1, 2)), Fp(4));
    }

    #[test]
    fn huge_rational_to_float() {
        let big = Q::new(num_traits::pow(BigInt::from(10), 400) * 3, num_traits::pow(BigInt::from(10), 400));
        assert!((q_to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
