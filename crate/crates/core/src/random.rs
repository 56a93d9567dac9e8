//! Seeded random series and matrices for property checks.
//!
//! A random series has a term count uniform in `1..=12`, word lengths
//! uniform in `0..=max_len`, letters uniform in `1..=max_letter` and
//! standard complex Gaussian coefficients (`E|c|^2 = 1`).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linsys::AlgebraMatrix;
use crate::series::{Admission, NcSeries, TruncationPolicy};
use crate::word::Word;

pub struct SeriesGenerator {
    rng: ChaCha8Rng,
    max_len: usize,
    max_letter: u32,
    max_terms: usize,
}

impl SeriesGenerator {
    pub fn new(seed: u64, max_len: usize, max_letter: u32) -> Self {
        SeriesGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_len,
            max_letter: max_letter.max(1),
            max_terms: 12,
        }
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms.max(1);
        self
    }

    pub fn trunc(&self) -> TruncationPolicy {
        TruncationPolicy::new(self.max_len).with_max_letter(self.max_letter)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Standard complex Gaussian.
    pub fn complex(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn word_with_len(&mut self, len: usize) -> Word {
        let letters = (0..len)
            .map(|_| self.rng.gen_range(1..=self.max_letter))
            .collect();
        Word::new(letters).expect("generated letters are positive")
    }

    pub fn word(&mut self) -> Word {
        let len = self.rng.gen_range(0..=self.max_len);
        self.word_with_len(len)
    }

    pub fn series(&mut self) -> NcSeries {
        let n = self.rng.gen_range(1..=self.max_terms);
        let pairs: Vec<_> = (0..n).map(|_| (self.word(), self.complex())).collect();
        NcSeries::from_terms(pairs, self.trunc(), Admission::Strict)
            .expect("generated words fit the truncation")
    }

    /// A random series whose words all have length at least one.
    pub fn series_without_constant(&mut self) -> NcSeries {
        let n = self.rng.gen_range(1..=self.max_terms);
        let pairs: Vec<_> = (0..n)
            .map(|_| {
                let len = self.rng.gen_range(1..=self.max_len.max(1));
                (self.word_with_len(len), self.complex())
            })
            .collect();
        NcSeries::from_terms(pairs, self.trunc(), Admission::Lenient)
            .expect("lenient construction cannot fail")
    }

    /// A random series with its constant term replaced by `c`.
    pub fn series_with_expectation(&mut self, c: Complex64) -> NcSeries {
        let f = self.series_without_constant();
        f.add(&NcSeries::constant(c, self.trunc()))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> AlgebraMatrix {
        let entries = (0..rows * cols).map(|_| self.series()).collect();
        AlgebraMatrix::with_policy(rows, cols, self.trunc(), entries)
    }

    /// A matrix whose entries have zero constant term.
    pub fn matrix_without_constant(&mut self, rows: usize, cols: usize) -> AlgebraMatrix {
        let entries = (0..rows * cols)
            .map(|_| self.series_without_constant())
            .collect();
        AlgebraMatrix::with_policy(rows, cols, self.trunc(), entries)
    }

    pub fn complex_matrix(&mut self, rows: usize, cols: usize) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(rows, cols, |_, _| self.complex())
    }
}
