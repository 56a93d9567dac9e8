//! Truncated arithmetic in the non-commutative Kondratiev space of
//! stochastic distributions.
//!
//! Elements are sparse series `f = sum_alpha f_alpha e_alpha` indexed by
//! words of the free monoid over `{1, 2, 3, ...}`. The Wick product is
//! convolution over the monoid (concatenation on basis words), and the
//! spaces are graded by the Hilbert norms
//! `‖f‖_p^2 = sum_alpha |f_alpha|^2 (2N)^{-alpha p}`.
//!
//! - [`word`]: words, prefix order, weights and weight sequences.
//! - [`series`]: truncated series, the Wick product, norms, expectation.
//! - [`quantization`]: zeta values, Hilbert-Schmidt norms, Våge constants.
//! - [`calculus`]: Wick powers, power series, inverses, spectrum, `D_m`.
//! - [`linsys`]: algebra-valued matrices, convolution systems,
//!   realizations and observability.
//! - [`io`]: the JSON formats; [`cli`]: the `ncwick` command line.
//!
//! Every operation works on graded truncations: coefficients of words up
//! to the truncation length are exact, longer words are dropped. Since the
//! length of a concatenation is the sum of the lengths, truncation commutes
//! with all algebra operations.

pub mod calculus;
pub mod cli;
pub mod error;
pub mod io;
pub mod linsys;
pub mod quantization;
pub mod random;
pub mod series;
pub mod word;

pub use calculus::{
    apply_series, derivation, derivation_bound_check, spectrum, wick_inverse, wick_pow,
    PowerSeriesSpec,
};
pub use error::{Error, Result};
pub use linsys::{AlgebraMatrix, SystemDef};
pub use num_complex::Complex64;
pub use quantization::{hs_norm_embedding, monoid_weight_sum, vage_constant, zeta, EmbeddingSpec};
pub use series::{Admission, NcSeries, TruncationPolicy};
pub use word::{WeightSequence, Word};
