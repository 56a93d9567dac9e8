//! Sparse, graded-truncated elements of the non-commutative Kondratiev
//! space and the Wick product.
//!
//! A series keeps the coefficients of the words of length `<= max_len`
//! (and letters `<= max_letter`, when bounded). Because word length is
//! additive under concatenation, the degree-`<= L` part of a Wick product
//! only depends on the degree-`<= L` parts of its factors, so every closed
//! operation here is exact on the retained words and simply discards the
//! longer ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::word::{WeightSequence, Word};

/// Which words a series may carry, and which coefficients get pruned.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy {
    pub max_len: usize,
    /// `None` means unbounded.
    pub max_letter: Option<u32>,
    /// Coefficients with modulus below this are dropped after each closed
    /// operation. Zero (the default) keeps every nonzero coefficient.
    pub drop_tol: f64,
}

impl TruncationPolicy {
    pub fn new(max_len: usize) -> Self {
        TruncationPolicy {
            max_len,
            max_letter: None,
            drop_tol: 0.0,
        }
    }

    pub fn with_max_letter(mut self, max_letter: u32) -> Self {
        self.max_letter = Some(max_letter);
        self
    }

    pub fn with_drop_tol(mut self, drop_tol: f64) -> Self {
        self.drop_tol = drop_tol;
        self
    }

    pub fn admits(&self, w: &Word) -> bool {
        w.len() <= self.max_len
            && match (self.max_letter, w.max_letter()) {
                (Some(bound), Some(l)) => l <= bound,
                _ => true,
            }
    }

    /// Componentwise tightest of the two policies (the common coarser one).
    pub fn coarsest(&self, other: &TruncationPolicy) -> TruncationPolicy {
        TruncationPolicy {
            max_len: self.max_len.min(other.max_len),
            max_letter: match (self.max_letter, other.max_letter) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            drop_tol: self.drop_tol.max(other.drop_tol),
        }
    }

    fn keeps(&self, c: Complex64) -> bool {
        c != Complex64::new(0.0, 0.0) && !(c.norm() < self.drop_tol)
    }
}

/// How [`NcSeries::from_terms`] treats words outside the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admission {
    Strict,
    Lenient,
}

/// A finitely supported series `sum_alpha f_alpha e_alpha` over words.
#[derive(Clone, PartialEq)]
pub struct NcSeries {
    terms: BTreeMap<Word, Complex64>,
    trunc: TruncationPolicy,
}

impl NcSeries {
    pub fn zero(trunc: TruncationPolicy) -> Self {
        NcSeries {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    /// The Wick unit `e_0 = 1`.
    pub fn unit(trunc: TruncationPolicy) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), trunc)
    }

    pub fn constant(c: Complex64, trunc: TruncationPolicy) -> Self {
        Self::monomial(Word::empty(), c, trunc)
    }

    /// `c * e_w`, or zero if `w` falls outside the truncation.
    pub fn monomial(w: Word, c: Complex64, trunc: TruncationPolicy) -> Self {
        let mut s = Self::zero(trunc);
        if trunc.admits(&w) && trunc.keeps(c) {
            s.terms.insert(w, c);
        }
        s
    }

    /// The basis element `e_w`.
    pub fn basis(w: Word, trunc: TruncationPolicy) -> Self {
        Self::monomial(w, Complex64::new(1.0, 0.0), trunc)
    }

    /// Builds a series, summing repeated words. In strict mode a word the
    /// policy does not admit is an error; in lenient mode it is dropped.
    pub fn from_terms<I>(pairs: I, trunc: TruncationPolicy, admission: Admission) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Complex64)>,
    {
        let mut terms: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (w, c) in pairs {
            if !trunc.admits(&w) {
                match admission {
                    Admission::Strict => {
                        return Err(Error::TruncationViolation {
                            word: w,
                            max_len: trunc.max_len,
                            max_letter: trunc.max_letter,
                        })
                    }
                    Admission::Lenient => continue,
                }
            }
            *terms.entry(w).or_default() += c;
        }
        terms.retain(|_, c| trunc.keeps(*c));
        Ok(NcSeries { terms, trunc })
    }

    pub fn trunc(&self) -> &TruncationPolicy {
        &self.trunc
    }

    /// Re-truncates to `trunc`, dropping words it does not admit.
    pub fn with_trunc(&self, trunc: TruncationPolicy) -> Self {
        NcSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, c)| trunc.admits(w) && trunc.keeps(**c))
                .map(|(w, c)| (w.clone(), *c))
                .collect(),
            trunc,
        }
    }

    pub fn coeff(&self, w: &Word) -> Complex64 {
        self.terms.get(w).copied().unwrap_or_default()
    }

    /// Terms in graded-lexicographic word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the shortest word in the support.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    /// Largest letter occurring in the support.
    pub fn max_letter(&self) -> Option<u32> {
        self.terms.keys().filter_map(Word::max_letter).max()
    }

    /// Generalized expectation `E[f] = f_0`, the coefficient of the empty word.
    pub fn expectation(&self) -> Complex64 {
        self.coeff(&Word::empty())
    }

    pub fn add(&self, other: &NcSeries) -> NcSeries {
        let trunc = self.trunc.coarsest(&other.trunc);
        let mut terms: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (w, c) in self.terms.iter().chain(other.terms.iter()) {
            if trunc.admits(w) {
                *terms.entry(w.clone()).or_default() += *c;
            }
        }
        terms.retain(|_, c| trunc.keeps(*c));
        NcSeries { terms, trunc }
    }

    pub fn scale(&self, c: Complex64) -> NcSeries {
        let trunc = self.trunc;
        NcSeries {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), c * x))
                .filter(|(_, x)| trunc.keeps(*x))
                .collect(),
            trunc,
        }
    }

    pub fn sub(&self, other: &NcSeries) -> NcSeries {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// The Wick product `(f ⊗ g)_gamma = sum_{beta delta = gamma} f_beta g_delta`.
    ///
    /// Iterates over term pairs and aggregates the concatenations in a hash
    /// map. For a fixed output word the contributions arrive in increasing
    /// length of the left factor, so the floating-point summation order is
    /// fixed and the result does not depend on hashing.
    pub fn wick_mul(&self, other: &NcSeries) -> NcSeries {
        let trunc = self.trunc.coarsest(&other.trunc);
        let mut acc: HashMap<Word, Complex64> = HashMap::with_capacity(self.len() * other.len());
        for (beta, fb) in &self.terms {
            if beta.len() > trunc.max_len {
                break;
            }
            for (delta, gd) in &other.terms {
                if beta.len() + delta.len() > trunc.max_len {
                    break;
                }
                let gamma = beta.concat(delta);
                if trunc.admits(&gamma) {
                    *acc.entry(gamma).or_default() += fb * gd;
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| trunc.keeps(*c)).collect();
        NcSeries { terms, trunc }
    }

    /// `‖f‖_p = (sum_alpha |f_alpha|^2 weight(alpha)^{-p})^{1/2}`.
    ///
    /// Positive `p` gives the distribution-side norms (weights damp long
    /// words), negative `p` the test-function side, `p = 0` the plain
    /// white-noise norm.
    pub fn norm_p(&self, p: i32, weights: &WeightSequence) -> Result<f64> {
        Ok(self.norm_p_squared(p, weights)?.sqrt())
    }

    pub fn norm_p_squared(&self, p: i32, weights: &WeightSequence) -> Result<f64> {
        let mut total = 0.0;
        for (w, c) in &self.terms {
            let term = weighted_square(c.norm_sqr(), w, p, weights);
            if !term.is_finite() {
                return Err(Error::Overflow { word: w.clone() });
            }
            total += term;
        }
        if total.is_finite() {
            Ok(total)
        } else {
            Err(Error::Overflow {
                word: self.terms.keys().last().cloned().unwrap_or_default(),
            })
        }
    }

    pub fn norm_p_default(&self, p: i32) -> f64 {
        self.norm_p(p, &WeightSequence::kondratiev())
            .expect("default weights do not overflow for moderate p")
    }

    /// Largest coefficient modulus; zero for the zero series.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `|c|^2 weight(w)^{-p}`, by direct products when they stay in range and
/// in log space otherwise.
fn weighted_square(c_sq: f64, w: &Word, p: i32, weights: &WeightSequence) -> f64 {
    let direct = w.letters().iter().map(|&l| weights.get(l)).product::<f64>();
    if direct.is_finite() && direct > 0.0 {
        let term = c_sq * direct.powi(-p);
        if term.is_finite() && (term > 0.0 || c_sq == 0.0) {
            return term;
        }
    }
    (c_sq.ln() - f64::from(p) * w.log_weight(weights)).exp()
}

impl fmt::Debug for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})e{w}")?;
        }
        Ok(())
    }
}

impl Add for &NcSeries {
    type Output = NcSeries;

    fn add(self, rhs: &NcSeries) -> NcSeries {
        NcSeries::add(self, rhs)
    }
}

impl Sub for &NcSeries {
    type Output = NcSeries;

    fn sub(self, rhs: &NcSeries) -> NcSeries {
        NcSeries::sub(self, rhs)
    }
}

/// `&f * &g` is the Wick product.
impl Mul for &NcSeries {
    type Output = NcSeries;

    fn mul(self, rhs: &NcSeries) -> NcSeries {
        self.wick_mul(rhs)
    }
}

impl Neg for &NcSeries {
    type Output = NcSeries;

    fn neg(self) -> NcSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Norms `‖ι(f_N) ⊗ ι(f_N)‖_0` for `N = 1..=n`, where `ι` places an ℓ²
/// sequence on the powers `z_1^k` and `f_k = 1 / (sqrt(k) ln(k + 1))`.
///
/// The sequence is square summable, but its self-convolution behaves like
/// `π / ln(n)^2` and is not, so the values grow without bound: the
/// white-noise space is not closed under the Wick product.
pub fn white_noise_blowup_demo(n: usize) -> Vec<f64> {
    let trunc = TruncationPolicy::new(2 * n);
    let embed = |upto: usize| {
        NcSeries::from_terms(
            (1..=upto).map(|k| {
                (
                    Word::power(1, k).expect("letter 1 is positive"),
                    Complex64::new(blowup_sequence(k), 0.0),
                )
            }),
            trunc,
            Admission::Strict,
        )
        .expect("words fit the truncation")
    };
    (1..=n)
        .map(|upto| {
            let f = embed(upto);
            f.wick_mul(&f).norm_p_default(0)
        })
        .collect()
}

/// `f_k = 1 / (sqrt(k) ln(k + 1))`, the ℓ² sequence used by
/// [`white_noise_blowup_demo`].
pub fn blowup_sequence(k: usize) -> f64 {
    let k = k as f64;
    1.0 / (k.sqrt() * (k + 1.0).ln())
}
