//! Words of the free monoid over the positive integers.
//!
//! Letter `i` stands for the generator `z_i`; the empty word is the monoid
//! unit. Words are stored flat, one entry per letter, and compare in graded
//! lexicographic order (length first, then letters), which is the canonical
//! order for every serialized series.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quantization::zeta;

/// A finite word `z_{i_1} z_{i_2} ... z_{i_n}` with every `i_k >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::ZeroLetter);
        }
        Ok(Word(letters))
    }

    /// Single-letter word `z_i`.
    pub fn letter(i: u32) -> Result<Self> {
        Word::new(vec![i])
    }

    /// `z_i^n`.
    pub fn power(i: u32, n: usize) -> Result<Self> {
        Word::new(vec![i; n])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// True iff `self` is an initial segment of `word`, i.e. `word = self * gamma`.
    pub fn is_prefix_of(&self, word: &Word) -> bool {
        word.0.starts_with(&self.0)
    }

    /// The unique `gamma` with `self * gamma = word`.
    pub fn left_quotient(&self, word: &Word) -> Result<Word> {
        if !self.is_prefix_of(word) {
            return Err(Error::NotAPrefix {
                prefix: self.clone(),
                word: word.clone(),
            });
        }
        Ok(Word(word.0[self.len()..].to_vec()))
    }

    /// All `len + 1` splittings `(beta, delta)` with `beta * delta = self`,
    /// ordered by the length of `beta`.
    pub fn factorizations(&self) -> Vec<(Word, Word)> {
        (0..=self.len())
            .map(|k| (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec())))
            .collect()
    }

    /// Run-length form `[(i_1, alpha_1), (i_2, alpha_2), ...]` with
    /// `i_k != i_{k+1}`.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((letter, count)) if *letter == l => *count += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    /// The word with the letter at `position` removed.
    pub fn delete_at(&self, position: usize) -> Word {
        let mut letters = self.0.clone();
        letters.remove(position);
        Word(letters)
    }

    /// `sum_k ln a_{i_k}`, the logarithm of [`Word::weight`].
    pub fn log_weight(&self, weights: &WeightSequence) -> f64 {
        self.0.iter().map(|&l| weights.get(l).ln()).sum()
    }

    /// `prod_k a_{i_k}`; for the default weights this is `(2N)^alpha`.
    pub fn weight(&self, weights: &WeightSequence) -> Result<f64> {
        let w = self.0.iter().map(|&l| weights.get(l)).product::<f64>();
        if w.is_finite() {
            Ok(w)
        } else {
            Err(Error::Overflow { word: self.clone() })
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<u32>) -> Result<Self> {
        Word::new(letters)
    }
}

impl<const N: usize> TryFrom<[u32; N]> for Word {
    type Error = Error;

    fn try_from(letters: [u32; N]) -> Result<Self> {
        Word::new(letters.to_vec())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let letters = Vec::<u32>::deserialize(deserializer)?;
        Word::new(letters).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building a word from a literal letter list.
///
/// Panics on a zero letter; meant for tests and examples.
#[macro_export]
macro_rules! word {
    () => { $crate::word::Word::empty() };
    ($($l:expr),+ $(,)?) => {
        $crate::word::Word::new(vec![$($l),+]).expect("letters must be positive")
    };
}

type WeightFn = Arc<dyn Fn(u32) -> f64 + Send + Sync>;
type LetterSumFn = Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>;
type TailFn = Arc<dyn Fn(u32, f64) -> Option<f64> + Send + Sync>;

#[derive(Clone)]
enum LetterSum {
    Closed(LetterSumFn),
    PartialWithTail { cutoff: u32, tail: TailFn },
}

/// A weight sequence `a_1, a_2, ... >= 1` with a declared nuclearity index
/// `d` such that `sum_i a_i^{-d} < 1`.
///
/// The letter sums `sum_i a_i^{-s}` are needed in closed form (or as a
/// partial sum plus an explicit tail) for the Hilbert-Schmidt and Våge
/// constants.
#[derive(Clone)]
pub struct WeightSequence {
    weight_fn: WeightFn,
    index_d: u32,
    letter_sum: LetterSum,
    name: &'static str,
}

impl fmt::Debug for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSequence")
            .field("name", &self.name)
            .field("index_d", &self.index_d)
            .finish()
    }
}

impl Default for WeightSequence {
    fn default() -> Self {
        WeightSequence::kondratiev()
    }
}

impl WeightSequence {
    /// `a_i = 2i` with `d = 2`.
    pub fn kondratiev() -> Self {
        WeightSequence {
            weight_fn: Arc::new(|i| 2.0 * f64::from(i)),
            index_d: 2,
            letter_sum: LetterSum::Closed(Arc::new(|s| {
                // sum (2i)^-s = 2^-s zeta(s)
                zeta(s).ok().map(|z| 2f64.powf(-s) * z)
            })),
            name: "kondratiev",
        }
    }

    /// `a_i = base^i` for `base > 1`; `sum_i a_i^{-s} = 1 / (base^s - 1)`.
    pub fn geometric(base: f64, index_d: u32) -> Result<Self> {
        if !(base > 1.0) || !base.is_finite() {
            return Err(Error::InvalidWeights(format!(
                "geometric base must exceed 1, got {base}"
            )));
        }
        let seq = WeightSequence {
            weight_fn: Arc::new(move |i| base.powf(f64::from(i))),
            index_d,
            letter_sum: LetterSum::Closed(Arc::new(move |s| {
                (s > 0.0).then(|| 1.0 / (base.powf(s) - 1.0))
            })),
            name: "geometric",
        };
        seq.validate()?;
        Ok(seq)
    }

    /// A user-supplied sequence. `tail(n, s)` must return an upper bound
    /// (ideally the exact value) of `sum_{i > n} a_i^{-s}`, or `None` when
    /// the sum diverges. Letter sums are evaluated as the exact partial sum
    /// up to `cutoff` plus that tail.
    pub fn custom<W, T>(weight_fn: W, index_d: u32, cutoff: u32, tail: T) -> Result<Self>
    where
        W: Fn(u32) -> f64 + Send + Sync + 'static,
        T: Fn(u32, f64) -> Option<f64> + Send + Sync + 'static,
    {
        let seq = WeightSequence {
            weight_fn: Arc::new(weight_fn),
            index_d,
            letter_sum: LetterSum::PartialWithTail {
                cutoff,
                tail: Arc::new(tail),
            },
            name: "custom",
        };
        seq.validate()?;
        Ok(seq)
    }

    fn validate(&self) -> Result<()> {
        if self.index_d == 0 {
            return Err(Error::InvalidWeights("index d must be positive".into()));
        }
        let probe = match &self.letter_sum {
            LetterSum::PartialWithTail { cutoff, .. } => (*cutoff).max(1),
            LetterSum::Closed(_) => 1000,
        };
        if let Some(i) = (1..=probe).find(|&i| !(self.get(i) >= 1.0)) {
            return Err(Error::InvalidWeights(format!(
                "a_{i} = {} is below 1",
                self.get(i)
            )));
        }
        match self.letter_sum(f64::from(self.index_d)) {
            Some(t) if t < 1.0 => Ok(()),
            Some(t) => Err(Error::InvalidWeights(format!(
                "sum a_i^-{} = {t} is not below 1",
                self.index_d
            ))),
            None => Err(Error::InvalidWeights(format!(
                "sum a_i^-{} diverges",
                self.index_d
            ))),
        }
    }

    /// `a_i`.
    pub fn get(&self, letter: u32) -> f64 {
        (self.weight_fn)(letter)
    }

    pub fn index_d(&self) -> u32 {
        self.index_d
    }

    /// `sum_{i >= 1} a_i^{-s}`, or `None` if it diverges.
    pub fn letter_sum(&self, s: f64) -> Option<f64> {
        let value = match &self.letter_sum {
            LetterSum::Closed(f) => f(s)?,
            LetterSum::PartialWithTail { cutoff, tail } => {
                let head: f64 = (1..=*cutoff).rev().map(|i| self.get(i).powf(-s)).sum();
                head + tail(*cutoff, s)?
            }
        };
        value.is_finite().then_some(value)
    }

    /// Smallest `d <= max_d` with `sum_i a_i^{-d} < 1`, if any.
    pub fn smallest_index(&self, max_d: u32) -> Option<u32> {
        (1..=max_d).find(|&d| matches!(self.letter_sum(f64::from(d)), Some(t) if t < 1.0))
    }
}
