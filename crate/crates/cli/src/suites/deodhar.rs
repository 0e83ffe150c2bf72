//! `mirror verify deodhar`, `mirror deodhar enumerate` and
//! `mirror deodhar sample`.

use super::{document, rng};
use crate::report::{self, ReportDocument, Row};
use crate::{SuiteConfig, SuiteError};
use mirror_core::chevalley::MatrixRep;
use mirror_core::deodhar::{
    bruhat_position_lower, bruhat_position_upper, cell_counts, chart_point, chart_union_mod_p, coset_normal_form,
    open_stratum, predicted_count, random_positive,
};
use mirror_core::weyl::{
    all_elements, distinguished_subexpressions, longest_word, permutation_of, reduced_words, CartanSpec, Subexpression,
    WeylElement, WeylWord,
};
use serde_json::{json, Value};

const DEFAULT_PRIMES: [u64; 3] = [5, 7, 11];

fn config<E: std::fmt::Display>(e: E) -> SuiteError {
    SuiteError::Config(e.to_string())
}

fn primes(cfg: &SuiteConfig) -> Result<Vec<u64>, SuiteError> {
    let p = if cfg.primes.is_empty() { DEFAULT_PRIMES.to_vec() } else { cfg.primes.clone() };
    if let Some(bad) = p.iter().find(|&&p| ![2, 3, 5, 7, 11, 13].contains(&p)) {
        return Err(SuiteError::Config(format!("prime {bad} is not one of 2, 3, 5, 7, 11, 13")));
    }
    Ok(p)
}

fn rank(cfg: &SuiteConfig) -> Result<usize, SuiteError> {
    match cfg.rank.unwrap_or(2) {
        n @ 1..=3 => Ok(n),
        n => Err(SuiteError::Config(format!("Deodhar suites support ranks 1 to 3, got {n}"))),
    }
}

/// Every subexpression of `base` for `v` passing the distinguished test,
/// by exhausting all subsets of positions.
pub fn brute_force(spec: &CartanSpec, v: &WeylElement, base: &WeylWord) -> Vec<Subexpression> {
    let m = base.len();
    let mut out: Vec<Subexpression> = (0u32..1 << m)
        .map(|mask| Subexpression::classify(spec, base, (1..=m).filter(|l| mask >> (l - 1) & 1 == 1).collect()))
        .filter(|s| s.element(spec) == *v && s.is_distinguished(spec))
        .collect();
    out.sort_by(|a, b| a.positions.cmp(&b.positions));
    out
}

pub fn verify(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let ranks = match cfg.rank {
        Some(_) => vec![rank(cfg)?],
        None => vec![2, 3],
    };
    let primes = primes(cfg)?;
    let mut doc = document(cfg);
    for n in ranks {
        let spec = CartanSpec::a(n);
        let rep = MatrixRep::type_a(n);
        let w0 = longest_word(&spec);
        let words = reduced_words(&spec, &w0).map_err(config)?;
        let elements = all_elements(&spec).map_err(config)?;
        let mut enum_ok = true;
        for i in &words {
            for v in &elements {
                let found = distinguished_subexpressions(&spec, &v.reduced_word(&spec), i).map_err(config)?;
                enum_ok &= found == brute_force(&spec, v, i);
            }
        }
        let inputs = json!({ "n": n, "words": words.len(), "elements": elements.len() });
        doc.rows.push(Row::exact(format!("deodhar.n{n}.enumeration"), &inputs, enum_ok));
        for &p in &primes {
            let counts = cell_counts(&rep, &w0, p).map_err(config)?;
            let mut ok = true;
            let mut union_ok = true;
            let mut pairs = 0;
            for v in elements.iter().filter(|v| w0.len() - v.length(&spec) <= 4) {
                let letters = v.reduced_word(&spec);
                let brute = counts.get(&permutation_of(n, &letters)).copied().unwrap_or(0);
                for i in &words {
                    pairs += 1;
                    ok &= predicted_count(&rep, &letters, i, p).map_err(config)? == brute;
                    let (total, distinct, cells) = chart_union_mod_p(&rep, &letters, i, p).map_err(config)?;
                    union_ok &= total == distinct && distinct == brute && cells;
                }
            }
            let inputs = json!({ "n": n, "p": p });
            doc.rows.push(
                Row::exact(format!("deodhar.n{n}.p{p}.count"), &inputs, ok).with_detail(format!("{pairs} (v, i) pairs")),
            );
            doc.rows.push(Row::exact(format!("deodhar.n{n}.p{p}.chart_union"), &inputs, union_ok));
        }
    }
    Ok(doc)
}

fn word_and_v(cfg: &SuiteConfig, spec: &CartanSpec) -> Result<(WeylWord, Vec<usize>), SuiteError> {
    let letters = if cfg.word.is_empty() { longest_word(spec) } else { cfg.word.clone() };
    let word = WeylWord::reduced(spec, letters).map_err(config)?;
    spec.check_letters(&cfg.v).map_err(config)?;
    Ok((word, cfg.v.clone()))
}

fn subexpression_json(s: &Subexpression, spec: &CartanSpec) -> Value {
    json!({
        "positions": s.positions,
        "j0": s.j0,
        "j_plus": s.j_plus,
        "j_minus": s.j_minus,
        "positive": s.is_positive(spec),
    })
}

pub fn enumerate(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let n = rank(cfg)?;
    let spec = CartanSpec::a(n);
    let rep = MatrixRep::type_a(n);
    let primes = primes(cfg)?;
    let (word, v) = word_and_v(cfg, &spec)?;
    let found = distinguished_subexpressions(&spec, &v, &word).map_err(config)?;
    let brute = brute_force(&spec, &WeylElement::from_word(&spec, &v), &word);
    let mut counts = serde_json::Map::new();
    for &p in &primes {
        counts.insert(p.to_string(), json!(predicted_count(&rep, &v, &word, p).map_err(config)?));
    }
    let mut doc = document(cfg);
    let inputs = json!({ "n": n, "v": v, "word": word.letters });
    doc.rows.push(
        Row::exact("deodhar.enumerate", &inputs, found == brute).with_detail(format!("{} subexpressions", found.len())),
    );
    doc.extra = Some(json!({
        "subexpressions": found.iter().map(|s| subexpression_json(s, &spec)).collect::<Vec<_>>(),
        "predicted_counts": counts,
    }));
    Ok(doc)
}

pub fn sample(cfg: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    let n = rank(cfg)?;
    let spec = CartanSpec::a(n);
    let rep = MatrixRep::type_a(n);
    let (word, v) = word_and_v(cfg, &spec)?;
    let chart = open_stratum(&rep, &word, &v).map_err(config)?;
    let v_perm = permutation_of(n, &v);
    let w_perm = permutation_of(n, &word.letters);
    let mut doc = document(cfg);
    let mut samples = Vec::new();
    let mut ok = true;
    for s in 0..cfg.samples.unwrap_or(1) {
        let mut r = rng(cfg.seed, s as u64);
        let coords: Vec<_> = (0..chart.dim()).map(|_| random_positive(&mut r, 1 << 20)).collect();
        let g = chart_point(&chart, &coords).map_err(config)?;
        ok &= bruhat_position_upper(&g) == v_perm && bruhat_position_lower(&g) == w_perm;
        samples.push(json!({
            "coords": report::rationals(&coords),
            "matrix": report::rational_matrix(&g),
            "normal_form": report::rational_matrix(&coset_normal_form(&g)),
        }));
    }
    let inputs = json!({ "n": n, "v": v, "word": word.letters, "seed": cfg.seed });
    doc.rows.push(Row::exact("deodhar.sample.cells", &inputs, ok));
    doc.extra = Some(json!({ "chart": subexpression_json(&chart.sub, &spec), "samples": samples }));
    Ok(doc)
}
