use thiserror::Error;

use crate::word::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letters must be positive integers, got 0")]
    ZeroLetter,

    #[error("{prefix} is not a prefix of {word}")]
    NotAPrefix { prefix: Word, word: Word },

    #[error("weight of {word} overflows the floating range")]
    Overflow { word: Word },

    #[error("word {word} violates truncation (max_len {max_len}, max_letter {max_letter:?})")]
    TruncationViolation {
        word: Word,
        max_len: usize,
        max_letter: Option<u32>,
    },

    #[error("invalid weight sequence: {0}")]
    InvalidWeights(String),

    #[error("argument {arg} outside the domain: {reason}")]
    Domain { arg: f64, reason: &'static str },

    #[error("letter sum of a^(-{exponent}) diverges or is not finite")]
    Divergent { exponent: f64 },

    #[error("Hilbert-Schmidt norm {hs_norm} of the embedding is not below 1")]
    NotContractive { hs_norm: f64 },

    #[error("|E[f]| = {modulus} violates the convergence condition |E[f]| < R/B_2 = {limit}")]
    RadiusViolation { modulus: f64, limit: f64 },

    #[error("series with E[f] = {expectation} is not Wick invertible")]
    NotInvertible { expectation: num_complex::Complex64 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
