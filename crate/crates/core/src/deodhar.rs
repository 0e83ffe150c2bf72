//! Deodhar strata as coordinate charts on intersections of opposed Bruhat
//! cells in G/B₋, their evaluation to matrix cosets, and finite-field point
//! counts for type A.

use crate::chevalley::MatrixRep;
use crate::matrix::Matrix;
use crate::scalar::{Fp, Scalar, Q};
use crate::weyl::{
    distinguished_subexpressions, permutation_of, positive_subexpression, CartanLabel, Subexpression, WeylError,
    WeylWord,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DeodharError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("torus coordinate at position {0} is zero")]
    ZeroTorus(usize),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("chart has affine slots; positive sampling needs J₋ = ∅")]
    AffineSlots,
    #[error("finite-field counts support type A and primes 2..=13, got {0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    /// Nonzero coordinate of a factor `x_i(t)` (position in J₀).
    Torus,
    /// Free coordinate of a factor `y_i(m)ṡ_i⁻¹` (position in J₋).
    Affine,
}

#[derive(Clone, Debug)]
pub struct StratumChart {
    pub rep: MatrixRep,
    pub sub: Subexpression,
}

impl StratumChart {
    pub fn new(rep: &MatrixRep, sub: Subexpression) -> Self {
        StratumChart { rep: rep.clone(), sub }
    }

    /// Coordinate slots in position order.
    pub fn slots(&self) -> Vec<(usize, Slot)> {
        let mut out: Vec<(usize, Slot)> = self.sub.j0.iter().map(|&l| (l, Slot::Torus)).collect();
        out.extend(self.sub.j_minus.iter().map(|&l| (l, Slot::Affine)));
        out.sort();
        out
    }

    pub fn dim(&self) -> usize {
        self.sub.j0.len() + self.sub.j_minus.len()
    }
}

/// The chart for the positive subexpression of `v` in `i`.
pub fn open_stratum(rep: &MatrixRep, i: &WeylWord, v: &[usize]) -> Result<StratumChart, DeodharError> {
    Ok(StratumChart::new(rep, positive_subexpression(&rep.spec, v, i)?))
}

/// Coset representative `g₁⋯gₘ`: `x(t)` on J₀, `ṡ` on J₊, `y(m)ṡ⁻¹` on J₋.
pub fn chart_point<S: Scalar>(chart: &StratumChart, coords: &[S]) -> Result<Matrix<S>, DeodharError> {
    let slots = chart.slots();
    if coords.len() != slots.len() {
        return Err(DeodharError::Arity { expected: slots.len(), got: coords.len() });
    }
    let rep = &chart.rep;
    let mut g = Matrix::identity(rep.dim);
    let mut k = 0;
    for l in 1..=chart.sub.base.len() {
        let i = chart.sub.base.letters[l - 1];
        let factor = if chart.sub.j_plus.contains(&l) {
            rep.sdot(i)
        } else {
            let (_, slot) = slots[k];
            let c = &coords[k];
            k += 1;
            match slot {
                Slot::Torus => {
                    if c.is_zero() {
                        return Err(DeodharError::ZeroTorus(l));
                    }
                    rep.x(i, c)
                }
                Slot::Affine => rep.y(i, c).mul(&rep.sdot_inv(i)),
            }
        };
        g = g.mul(&factor);
    }
    Ok(g)
}

/// Positive rational coordinates with numerators and denominators up to
/// 2²⁰, deterministic in `seed`.
pub fn positive_sample(chart: &StratumChart, seed: u64) -> Result<Vec<Q>, DeodharError> {
    if !chart.sub.j_minus.is_empty() {
        return Err(DeodharError::AffineSlots);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..chart.dim()).map(|_| random_positive(&mut rng, 1 << 20)).collect())
}

pub fn random_positive(rng: &mut impl Rng, bound: i64) -> Q {
    Q::new(BigInt::from(rng.gen_range(1..=bound)), BigInt::from(rng.gen_range(1..=bound)))
}

/// Canonical representative of `g B₋`. Columns are processed from last to
/// first; each is reduced against the later ones at their pivot rows and
/// scaled so its lowest nonzero entry is 1.
pub fn coset_normal_form<S: Scalar>(g: &Matrix<S>) -> Matrix<S> {
    let n = g.dim();
    let scale = g.max_abs();
    let mut m = g.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for c in (0..n).rev() {
        for &(pr, pc) in &pivots {
            let f = m[(pr, c)].clone();
            if !f.is_zero() {
                for r in 0..n {
                    m[(r, c)] = m[(r, c)].clone() - f.clone() * m[(r, pc)].clone();
                }
            }
        }
        let Some(pr) = (0..n).rev().find(|&r| !m[(r, c)].is_negligible(scale)) else {
            continue;
        };
        let inv = m[(pr, c)].recip();
        for r in 0..n {
            m[(r, c)] = m[(r, c)].clone() * inv.clone();
        }
        pivots.push((pr, c));
    }
    m
}

/// Permutation `π` with `g ∈ B₊ π̇ B₋` (as `π[c] = r` for a pivot at
/// `(r, c)`).
pub fn bruhat_position_upper<S: Scalar>(g: &Matrix<S>) -> Vec<usize> {
    let rows: Vec<usize> = (0..g.dim()).rev().collect();
    eliminate(g, &rows, true)
}

/// Permutation `π` with `g ∈ B₋ π̇ B₋`.
pub fn bruhat_position_lower<S: Scalar>(g: &Matrix<S>) -> Vec<usize> {
    let rows: Vec<usize> = (0..g.dim()).collect();
    eliminate(g, &rows, false)
}

// Right multiplication by B₋ adds later columns to earlier ones, so each
// row's pivot is its rightmost unused nonzero column. The row order decides
// which rows may be cleared with the pivot row.
fn eliminate<S: Scalar>(g: &Matrix<S>, rows: &[usize], upward: bool) -> Vec<usize> {
    let n = g.dim();
    let scale = g.max_abs();
    let mut m = g.clone();
    let mut used = vec![false; n];
    let mut perm = vec![usize::MAX; n];
    for &r in rows {
        let Some(c) = (0..n).rev().find(|&c| !used[c] && !m[(r, c)].is_negligible(scale)) else {
            continue;
        };
        used[c] = true;
        perm[c] = r;
        let inv = m[(r, c)].recip();
        for cc in 0..c {
            let f = m[(r, cc)].clone() * inv.clone();
            if !f.is_zero() {
                for rr in 0..n {
                    m[(rr, cc)] = m[(rr, cc)].clone() - f.clone() * m[(rr, c)].clone();
                }
            }
        }
        let others: Vec<usize> = if upward { (0..r).collect() } else { (r + 1..n).collect() };
        for rr in others {
            let f = m[(rr, c)].clone() * inv.clone();
            if !f.is_zero() {
                for cc in 0..n {
                    m[(rr, cc)] = m[(rr, cc)].clone() - f.clone() * m[(r, cc)].clone();
                }
            }
        }
    }
    perm
}

fn type_a_rank(rep: &MatrixRep) -> Result<usize, DeodharError> {
    match rep.spec.label {
        CartanLabel::A(n) => Ok(n),
        other => Err(DeodharError::Unsupported(format!("{other:?}"))),
    }
}

/// Predicted number of F_p-points of `R_{v,w}`: the sum over distinguished
/// subexpressions of `(p−1)^{|J₀|} p^{|J₋|}`.
pub fn predicted_count(rep: &MatrixRep, v: &[usize], i: &WeylWord, p: u64) -> Result<u64, DeodharError> {
    Ok(distinguished_subexpressions(&rep.spec, v, i)?
        .iter()
        .map(|s| (p - 1).pow(s.j0.len() as u32) * p.pow(s.j_minus.len() as u32))
        .sum())
}

/// Brute-force point counts of `B₋ẇB₋/B₋` over F_p, split by the B₊-cell:
/// every point is `uẇ` with `u ∈ U₋ ∩ ẇU₊ẇ⁻¹`, and the map sends the
/// B₊-position (as a permutation) to its count. Type A only.
pub fn cell_counts(rep: &MatrixRep, w: &[usize], p: u64) -> Result<BTreeMap<Vec<usize>, u64>, DeodharError> {
    macro_rules! dispatch {
        ($($p:literal),*) => {
            match p {
                $($p => cell_counts_in::<$p>(rep, w),)*
                _ => Err(DeodharError::Unsupported(format!("p = {p}"))),
            }
        };
    }
    dispatch!(2, 3, 5, 7, 11, 13)
}

fn cell_counts_in<const P: u64>(rep: &MatrixRep, w: &[usize]) -> Result<BTreeMap<Vec<usize>, u64>, DeodharError> {
    let n = type_a_rank(rep)?;
    let d = n + 1;
    let perm = permutation_of(n, w);
    let mut inv = vec![0; d];
    for (k, &pk) in perm.iter().enumerate() {
        inv[pk] = k;
    }
    let free: Vec<(usize, usize)> =
        (0..d).flat_map(|r| (0..r).map(move |c| (r, c))).filter(|&(r, c)| inv[r] < inv[c]).collect();
    let wdot: Matrix<Fp<P>> = rep.weyl_rep(w);
    let mut counts = BTreeMap::new();
    let mut digits = vec![0u64; free.len()];
    loop {
        let mut u = Matrix::<Fp<P>>::identity(d);
        for (k, &(r, c)) in free.iter().enumerate() {
            u[(r, c)] = Fp(digits[k]);
        }
        *counts.entry(bruhat_position_upper(&u.mul(&wdot))).or_insert(0) += 1;
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(counts);
            }
            digits[k] += 1;
            if digits[k] < P {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Enumerates every chart point of every distinguished subexpression for
/// `v` over F_p and returns `(total, distinct cosets, all in the right
/// cells)`. Type A only.
pub fn chart_union_mod_p(rep: &MatrixRep, v: &[usize], i: &WeylWord, p: u64) -> Result<(u64, u64, bool), DeodharError> {
    macro_rules! dispatch {
        ($($p:literal),*) => {
            match p {
                $($p => chart_union_in::<$p>(rep, v, i),)*
                _ => Err(DeodharError::Unsupported(format!("p = {p}"))),
            }
        };
    }
    dispatch!(2, 3, 5, 7, 11, 13)
}

fn chart_union_in<const P: u64>(rep: &MatrixRep, v: &[usize], i: &WeylWord) -> Result<(u64, u64, bool), DeodharError> {
    let n = type_a_rank(rep)?;
    let v_perm = permutation_of(n, v);
    let w_perm = permutation_of(n, &i.letters);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut total = 0u64;
    let mut cells_ok = true;
    for sub in distinguished_subexpressions(&rep.spec, v, i)? {
        let chart = StratumChart::new(rep, sub);
        let slots = chart.slots();
        let mut digits: Vec<u64> = slots.iter().map(|(_, s)| if *s == Slot::Torus { 1 } else { 0 }).collect();
        'points: loop {
            let coords: Vec<Fp<P>> = digits.iter().map(|&x| Fp(x)).collect();
            let g = chart_point(&chart, &coords)?;
            cells_ok &= bruhat_position_upper(&g) == v_perm && bruhat_position_lower(&g) == w_perm;
            seen.insert(coset_normal_form(&g).entries().iter().map(|x| x.0).collect());
            total += 1;
            let mut k = 0;
            loop {
                if k == digits.len() {
                    break 'points;
                }
                digits[k] += 1;
                if digits[k] < P {
                    break;
                }
                digits[k] = if slots[k].1 == Slot::Torus { 1 } else { 0 };
                k += 1;
            }
        }
    }
    Ok((total, seen.len() as u64, cells_ok))
}
