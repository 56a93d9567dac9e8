//! Brute-force reference implementations shared by the integration tests.
//! Everything here works on plain letter vectors and maps, independent of
//! the library's internal representation.
#![allow(dead_code)]

use std::collections::BTreeMap;

use ncwick::{Complex64, NcSeries};

pub type Coeffs = BTreeMap<Vec<u32>, Complex64>;

pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
/// Apéry's constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn to_map(f: &NcSeries) -> Coeffs {
    f.iter().map(|(w, v)| (w.letters().to_vec(), *v)).collect()
}

/// Product coefficients by enumerating, for each candidate word, its split
/// points in increasing order of prefix length.
pub fn oracle_mul(f: &Coeffs, g: &Coeffs, max_len: usize) -> Coeffs {
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for a in f.keys() {
        for b in g.keys() {
            if a.len() + b.len() <= max_len {
                candidates.push([a.as_slice(), b.as_slice()].concat());
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut out = Coeffs::new();
    for gamma in candidates {
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..=gamma.len() {
            if let (Some(a), Some(b)) = (f.get(&gamma[..k]), g.get(&gamma[k..])) {
                sum += a * b;
            }
        }
        if sum != Complex64::new(0.0, 0.0) {
            out.insert(gamma, sum);
        }
    }
    out
}

/// Σ_k |f_β||g_δ| over factorizations γ = βδ: the magnitude scale of the
/// sum defining the product coefficient at γ.
pub fn product_scale(f: &Coeffs, g: &Coeffs, gamma: &[u32]) -> f64 {
    (0..=gamma.len())
        .filter_map(|k| Some(f.get(&gamma[..k])?.norm() * g.get(&gamma[k..])?.norm()))
        .sum()
}

/// Default weight of a word: Π 2·letter.
pub fn oracle_weight(w: &[u32]) -> f64 {
    w.iter().map(|&l| 2.0 * l as f64).product()
}

pub fn oracle_norm_sq(f: &Coeffs, p: i32) -> f64 {
    f.iter()
        .map(|(w, v)| v.norm_sqr() * oracle_weight(w).powi(-p))
        .sum()
}

pub fn oracle_norm(f: &Coeffs, p: i32) -> f64 {
    oracle_norm_sq(f, p).sqrt()
}

/// Deletes each occurrence of `m` in turn.
pub fn oracle_derivation(m: u32, f: &Coeffs) -> Coeffs {
    let mut out = Coeffs::new();
    for (w, v) in f {
        for (k, &l) in w.iter().enumerate() {
            if l == m {
                let mut shorter = w.clone();
                shorter.remove(k);
                *out.entry(shorter).or_insert(Complex64::new(0.0, 0.0)) += v;
            }
        }
    }
    out.retain(|_, v| *v != Complex64::new(0.0, 0.0));
    out
}

pub fn add(f: &Coeffs, g: &Coeffs) -> Coeffs {
    let mut out = f.clone();
    for (w, v) in g {
        *out.entry(w.clone()).or_insert(Complex64::new(0.0, 0.0)) += v;
    }
    out
}

/// Largest coefficient difference over the union of supports.
pub fn max_diff(f: &Coeffs, g: &Coeffs) -> f64 {
    f.keys()
        .chain(g.keys())
        .map(|w| {
            let a = f.get(w).copied().unwrap_or_default();
            let b = g.get(w).copied().unwrap_or_default();
            (a - b).norm()
        })
        .fold(0.0, f64::max)
}

/// All words of length at most `max_len` over `1..=alphabet`, by length.
pub fn all_words(max_len: usize, alphabet: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut level = vec![vec![]];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w: &Vec<u32>| {
                (1..=alphabet).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}
