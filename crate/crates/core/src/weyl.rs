//! Weyl-group combinatorics for A_n, B₂ and G₂: reduced words, braid moves,
//! Bruhat comparison and Deodhar subexpressions.
//!
//! Group elements are modelled faithfully by their action on the root
//! lattice in the basis of simple roots, `s_i(α_j) = α_j − a_ij α_i`.
//! Letters are 1-based throughout, matching the usual labelling of simple
//! roots.

use std::collections::{BTreeSet, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WeylError {
    #[error("Weyl group of order {0} exceeds the enumeration guard")]
    TooLarge(u128),
    #[error("letter {0} is not a simple index of the root system")]
    BadLetter(usize),
    #[error("word is not reduced")]
    NotReduced,
    #[error("{0} is not below {1} in Bruhat order")]
    NotBelow(String, String),
    #[error("words represent different group elements")]
    Mismatch,
}

pub const GROUP_ORDER_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanLabel {
    A(usize),
    B2,
    G2,
}

/// Cartan matrix with `a_ij = α_j(h_i)`. For B₂ and G₂ index 1 is the long
/// simple root and index 2 the short one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanSpec {
    pub label: CartanLabel,
    pub cartan: Vec<Vec<i64>>,
}

impl CartanSpec {
    pub fn a(n: usize) -> Self {
        assert!(n >= 1, "A_n needs n >= 1");
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 })
                    .collect()
            })
            .collect();
        CartanSpec { label: CartanLabel::A(n), cartan }
    }

    pub fn b2() -> Self {
        CartanSpec { label: CartanLabel::B2, cartan: vec![vec![2, -1], vec![-2, 2]] }
    }

    pub fn g2() -> Self {
        CartanSpec { label: CartanLabel::G2, cartan: vec![vec![2, -1], vec![-3, 2]] }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Bond order m_ij from the product a_ij·a_ji.
    pub fn bond(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i - 1][j - 1] * self.cartan[j - 1][i - 1] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => panic!("invalid Cartan product {p}"),
        }
    }

    pub fn is_long(&self, i: usize) -> bool {
        match self.label {
            CartanLabel::A(_) => true,
            _ => i == 1,
        }
    }

    pub fn group_order(&self) -> u128 {
        match self.label {
            CartanLabel::A(n) => (1..=(n as u128 + 1)).product(),
            CartanLabel::B2 => 8,
            CartanLabel::G2 => 12,
        }
    }

    pub fn check_letters(&self, letters: &[usize]) -> Result<(), WeylError> {
        match letters.iter().find(|&&l| l == 0 || l > self.rank()) {
            Some(&l) => Err(WeylError::BadLetter(l)),
            None => Ok(()),
        }
    }

    /// Checks the structural invariants of a Cartan matrix.
    pub fn is_valid(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| {
            self.cartan[i][i] == 2
                && (0..r).all(|j| {
                    i == j
                        || (self.cartan[i][j] <= 0
                            && (self.cartan[i][j] == 0) == (self.cartan[j][i] == 0)
                            && self.cartan[i][j] * self.cartan[j][i] <= 3)
                })
        })
    }
}

/// Group element as an integer matrix on root coordinates (column `j` is
/// the image of α_j).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    rank: usize,
    m: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![0; rank * rank];
        for k in 0..rank {
            m[k * rank + k] = 1;
        }
        WeylElement { rank, m }
    }

    pub fn simple(spec: &CartanSpec, i: usize) -> Self {
        let r = spec.rank();
        let mut e = Self::identity(r);
        for j in 0..r {
            e.m[(i - 1) * r + j] -= spec.cartan[i - 1][j];
        }
        e
    }

    pub fn from_word(spec: &CartanSpec, letters: &[usize]) -> Self {
        letters
            .iter()
            .fold(Self::identity(spec.rank()), |acc, &l| acc.mul(&Self::simple(spec, l)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = self.rank;
        let mut m = vec![0; r * r];
        for a in 0..r {
            for k in 0..r {
                let x = self.m[a * r + k];
                if x == 0 {
                    continue;
                }
                for b in 0..r {
                    m[a * r + b] += x * o.m[k * r + b];
                }
            }
        }
        WeylElement { rank: r, m }
    }

    /// `w(α_i)` is a positive root, i.e. `ℓ(w s_i) > ℓ(w)`.
    pub fn sends_positive(&self, i: usize) -> bool {
        let r = self.rank;
        (0..r).all(|a| self.m[a * r + i - 1] >= 0)
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| !self.sends_positive(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }

    pub fn length(&self, spec: &CartanSpec) -> usize {
        self.reduced_word(spec).len()
    }

    /// Lexicographically first reduced word, built from the right by
    /// stripping the smallest descent.
    pub fn reduced_word(&self, spec: &CartanSpec) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(&i) = w.right_descents().first() {
            word.push(i);
            w = w.mul(&WeylElement::simple(spec, i));
        }
        word.reverse();
        word
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    pub letters: Vec<usize>,
    pub reduced: bool,
}

impl WeylWord {
    pub fn new(spec: &CartanSpec, letters: Vec<usize>) -> Result<Self, WeylError> {
        spec.check_letters(&letters)?;
        let reduced = WeylElement::from_word(spec, &letters).length(spec) == letters.len();
        Ok(WeylWord { letters, reduced })
    }

    pub fn reduced(spec: &CartanSpec, letters: Vec<usize>) -> Result<Self, WeylError> {
        let w = Self::new(spec, letters)?;
        if w.reduced {
            Ok(w)
        } else {
            Err(WeylError::NotReduced)
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn element(&self, spec: &CartanSpec) -> WeylElement {
        WeylElement::from_word(spec, &self.letters)
    }
}

/// Reduced word of the longest element: greedy ascent by simple reflections.
pub fn longest_word(spec: &CartanSpec) -> Vec<usize> {
    longest_parabolic_word(spec, &(1..=spec.rank()).collect::<Vec<_>>())
}

/// Reduced word of the longest element of the parabolic subgroup generated
/// by `subset`.
pub fn longest_parabolic_word(spec: &CartanSpec, subset: &[usize]) -> Vec<usize> {
    let mut w = WeylElement::identity(spec.rank());
    let mut word = Vec::new();
    while let Some(&i) = subset.iter().find(|&&i| w.sends_positive(i)) {
        word.push(i);
        w = w.mul(&WeylElement::simple(spec, i));
    }
    word
}

/// All reduced words of the element represented by `word`, sorted
/// lexicographically.
pub fn reduced_words(spec: &CartanSpec, word: &[usize]) -> Result<Vec<WeylWord>, WeylError> {
    if spec.group_order() > GROUP_ORDER_GUARD {
        return Err(WeylError::TooLarge(spec.group_order()));
    }
    spec.check_letters(word)?;
    let w = WeylElement::from_word(spec, word);
    let mut memo: HashMap<WeylElement, Vec<Vec<usize>>> = HashMap::new();
    let mut words = words_of(spec, &w, &mut memo);
    words.sort();
    Ok(words.into_iter().map(|letters| WeylWord { letters, reduced: true }).collect())
}

fn words_of(
    spec: &CartanSpec,
    w: &WeylElement,
    memo: &mut HashMap<WeylElement, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let mut out = Vec::new();
    for i in w.right_descents() {
        let shorter = w.mul(&WeylElement::simple(spec, i));
        for mut u in words_of(spec, &shorter, memo) {
            u.push(i);
            out.push(u);
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidEdge {
    pub from: usize,
    pub to: usize,
    /// 0-based start of the rewritten span.
    pub start: usize,
    pub bond: usize,
}

#[derive(Clone, Debug)]
pub struct BraidGraph {
    pub vertices: Vec<WeylWord>,
    pub edges: Vec<BraidEdge>,
}

impl BraidGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(e.from, e.to), (e.to, e.from)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| if e.from == v { Some(e.to) } else if e.to == v { Some(e.from) } else { None })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Applies the braid relation of the given bond order at `start` if the
/// span alternates between two letters.
pub fn braid_move(spec: &CartanSpec, letters: &[usize], start: usize) -> Option<(Vec<usize>, usize)> {
    let a = *letters.get(start)?;
    let b = *letters.get(start + 1)?;
    if a == b {
        return None;
    }
    let m = spec.bond(a, b);
    if start + m > letters.len() {
        return None;
    }
    let alternating = (0..m).all(|k| letters[start + k] == if k % 2 == 0 { a } else { b });
    if !alternating {
        return None;
    }
    let mut out = letters.to_vec();
    for k in 0..m {
        out[start + k] = if k % 2 == 0 { b } else { a };
    }
    Some((out, m))
}

pub fn braid_move_graph(spec: &CartanSpec, words: &[WeylWord]) -> Result<BraidGraph, WeylError> {
    if let Some(first) = words.first() {
        let w = first.element(spec);
        if words.iter().any(|x| !x.reduced || x.element(spec) != w) {
            return Err(WeylError::Mismatch);
        }
    }
    let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(k, w)| (w.letters.as_slice(), k)).collect();
    let mut edges = Vec::new();
    for (k, w) in words.iter().enumerate() {
        for start in 0..w.len() {
            if let Some((moved, bond)) = braid_move(spec, &w.letters, start) {
                if let Some(&t) = index.get(moved.as_slice()) {
                    // each relation is found from both ends; keep one copy
                    if k < t {
                        edges.push(BraidEdge { from: k, to: t, start, bond });
                    }
                }
            }
        }
    }
    Ok(BraidGraph { vertices: words.to_vec(), edges })
}

/// `v ≤ w` in Bruhat order, via the subword property on a reduced word of `w`.
pub fn bruhat_le(spec: &CartanSpec, v: &WeylElement, w_word: &[usize]) -> bool {
    let m = w_word.len();
    assert!(m <= 24, "subword enumeration is limited to words of length 24");
    let mut reachable: BTreeSet<WeylElement> = BTreeSet::from([WeylElement::identity(spec.rank())]);
    for &l in w_word {
        let s = WeylElement::simple(spec, l);
        let next: Vec<_> = reachable.iter().map(|x| x.mul(&s)).collect();
        reachable.extend(next);
    }
    reachable.contains(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subexpression {
    pub base: WeylWord,
    /// 1-based chosen positions, strictly increasing.
    pub positions: Vec<usize>,
    pub j0: Vec<usize>,
    pub j_plus: Vec<usize>,
    pub j_minus: Vec<usize>,
}

impl Subexpression {
    /// Classifies the chosen positions by replaying the running product.
    pub fn classify(spec: &CartanSpec, base: &WeylWord, positions: Vec<usize>) -> Self {
        let m = base.len();
        let mut w = WeylElement::identity(spec.rank());
        let (mut j0, mut j_plus, mut j_minus) = (Vec::new(), Vec::new(), Vec::new());
        for l in 1..=m {
            let i = base.letters[l - 1];
            if positions.contains(&l) {
                if w.sends_positive(i) {
                    j_plus.push(l);
                } else {
                    j_minus.push(l);
                }
                w = w.mul(&WeylElement::simple(spec, i));
            } else {
                j0.push(l);
            }
        }
        Subexpression { base: base.clone(), positions, j0, j_plus, j_minus }
    }

    pub fn element(&self, spec: &CartanSpec) -> WeylElement {
        let letters: Vec<usize> = self.positions.iter().map(|&l| self.base.letters[l - 1]).collect();
        WeylElement::from_word(spec, &letters)
    }

    /// Letters of the chosen subword.
    pub fn letters(&self) -> Vec<usize> {
        self.positions.iter().map(|&l| self.base.letters[l - 1]).collect()
    }

    /// Every skipped position keeps the running product increasing.
    pub fn is_distinguished(&self, spec: &CartanSpec) -> bool {
        let mut w = WeylElement::identity(spec.rank());
        for l in 1..=self.base.len() {
            let i = self.base.letters[l - 1];
            if self.positions.contains(&l) {
                w = w.mul(&WeylElement::simple(spec, i));
            } else if !w.sends_positive(i) {
                return false;
            }
        }
        true
    }

    pub fn is_positive(&self, spec: &CartanSpec) -> bool {
        self.is_distinguished(spec) && self.j_minus.is_empty()
    }
}

/// All distinguished subexpressions for `v` in the reduced word `base`,
/// ordered by their position sequences. Empty when `v ≰ w`.
pub fn distinguished_subexpressions(
    spec: &CartanSpec,
    v: &[usize],
    base: &WeylWord,
) -> Result<Vec<Subexpression>, WeylError> {
    spec.check_letters(v)?;
    if !base.reduced {
        return Err(WeylError::NotReduced);
    }
    let target = WeylElement::from_word(spec, v);
    let mut out = Vec::new();
    // Depth-first over positions; the distinguished condition forces the
    // choice whenever multiplying would decrease length.
    fn go(
        spec: &CartanSpec,
        base: &WeylWord,
        target: &WeylElement,
        l: usize,
        w: WeylElement,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Subexpression>,
    ) {
        if l > base.len() {
            if w == *target {
                out.push(Subexpression::classify(spec, base, chosen.clone()));
            }
            return;
        }
        let i = base.letters[l - 1];
        let s = WeylElement::simple(spec, i);
        if w.sends_positive(i) {
            go(spec, base, target, l + 1, w.clone(), chosen, out);
        }
        chosen.push(l);
        go(spec, base, target, l + 1, w.mul(&s), chosen, out);
        chosen.pop();
    }
    go(spec, base, &target, 1, WeylElement::identity(spec.rank()), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.positions.cmp(&b.positions));
    Ok(out)
}

/// The distinguished subexpression for `v` with `J₋ = ∅`.
pub fn positive_subexpression(spec: &CartanSpec, v: &[usize], base: &WeylWord) -> Result<Subexpression, WeylError> {
    let all = distinguished_subexpressions(spec, v, base)?;
    let mut positive = all.into_iter().filter(|s| s.j_minus.is_empty());
    match positive.next() {
        Some(s) => Ok(s),
        None => Err(WeylError::NotBelow(format!("{v:?}"), format!("{:?}", base.letters))),
    }
}

/// Every element of a small Weyl group, by breadth-first search.
pub fn all_elements(spec: &CartanSpec) -> Result<Vec<WeylElement>, WeylError> {
    if spec.group_order() > GROUP_ORDER_GUARD {
        return Err(WeylError::TooLarge(spec.group_order()));
    }
    let mut seen = BTreeSet::from([WeylElement::identity(spec.rank())]);
    let mut queue = VecDeque::from([WeylElement::identity(spec.rank())]);
    while let Some(w) = queue.pop_front() {
        for i in 1..=spec.rank() {
            let x = w.mul(&WeylElement::simple(spec, i));
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Permutation model of a type-A word: `π(k)` is the image of `k` (0-based)
/// under the product of adjacent transpositions, composed left to right as
/// matrices act on column vectors.
pub fn permutation_of(n: usize, letters: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..=n).collect();
    for &l in letters.iter().rev() {
        for p in perm.iter_mut() {
            if *p == l - 1 {
                *p = l;
            } else if *p == l {
                *p = l - 1;
            }
        }
    }
    perm
}

pub fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_longest_words() {
        let spec = CartanSpec::a(2);
        let words = reduced_words(&spec, &[1, 2, 1]).unwrap();
        let letters: Vec<_> = words.iter().map(|w| w.letters.clone()).collect();
        assert_eq!(letters, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        let g = braid_move_graph(&spec, &words).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].bond, 3);
    }

    #[test]
    fn a1_graph_is_a_point() {
        let spec = CartanSpec::a(1);
        let words = reduced_words(&spec, &[1]).unwrap();
        assert_eq!(words.len(), 1);
        let g = braid_move_graph(&spec, &words).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn lengths_agree_with_permutation_inversions() {
        let spec = CartanSpec::a(3);
        for w in all_elements(&spec).unwrap() {
            let word = w.reduced_word(&spec);
            assert_eq!(word.len(), inversions(&permutation_of(3, &word)));
        }
    }

    #[test]
    fn longest_lengths() {
        assert_eq!(longest_word(&CartanSpec::a(3)).len(), 6);
        assert_eq!(longest_word(&CartanSpec::b2()).len(), 4);
        assert_eq!(longest_word(&CartanSpec::g2()).len(), 6);
        assert_eq!(longest_parabolic_word(&CartanSpec::a(3), &[1, 3]).len(), 2);
    }

    #[test]
    fn cartan_validity_and_bonds() {
        for spec in [CartanSpec::a(4), CartanSpec::b2(), CartanSpec::g2()] {
            assert!(spec.is_valid());
        }
        assert_eq!(CartanSpec::b2().bond(1, 2), 4);
        assert_eq!(CartanSpec::g2().bond(2, 1), 6);
        assert_eq!(CartanSpec::a(3).bond(1, 3), 2);
    }

    #[test]
    fn distinguished_examples() {
        let spec = CartanSpec::a(2);
        let base = WeylWord::reduced(&spec, vec![1, 2, 1]).unwrap();
        let e = distinguished_subexpressions(&spec, &[], &base).unwrap();
        let pos: Vec<_> = e.iter().map(|s| s.positions.clone()).collect();
        assert_eq!(pos, vec![vec![], vec![1, 3]]);
        assert_eq!(e[1].j_plus, vec![1]);
        assert_eq!(e[1].j_minus, vec![3]);
        let s1 = distinguished_subexpressions(&spec, &[1], &base).unwrap();
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[0].positions, vec![3]);
        let w0 = distinguished_subexpressions(&spec, &[1, 2, 1], &base).unwrap();
        assert_eq!(w0[0].positions, vec![1, 2, 3]);
        assert_eq!(positive_subexpression(&spec, &[1, 2], &base).unwrap().positions, vec![1, 2]);
        assert_eq!(positive_subexpression(&spec, &[], &base).unwrap().positions, Vec::<usize>::new());
    }

    #[test]
    fn not_below_is_empty() {
        let spec = CartanSpec::a(2);
        let base = WeylWord::reduced(&spec, vec![1]).unwrap();
        assert!(distinguished_subexpressions(&spec, &[2], &base).unwrap().is_empty());
        assert!(positive_subexpression(&spec, &[2], &base).is_err());
    }

    #[test]
    fn guard_trips_for_huge_rank() {
        assert!(matches!(reduced_words(&CartanSpec::a(10), &[1]), Err(WeylError::TooLarge(_))));
    }
}
