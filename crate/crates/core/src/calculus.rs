//! Wick calculus on truncated series: powers, power series, inverses,
//! the spectrum, and the derivations `D_m`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantization::kondratiev_vage_constant;
use crate::series::NcSeries;
use crate::word::WeightSequence;

/// Below this modulus `E[f]` counts as zero for inversion.
pub const INVERTIBILITY_THRESHOLD: f64 = 1e-14;

/// `f^{⊗n}`, with `f^{⊗0}` the unit. Uses binary powering; associativity
/// of the Wick product makes the grouping irrelevant up to rounding.
pub fn wick_pow(f: &NcSeries, n: u32) -> NcSeries {
    let mut result = NcSeries::unit(*f.trunc());
    let mut base = f.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = result.wick_mul(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.wick_mul(&base);
        }
    }
    result
}

/// A power series `φ(z) = sum_{n <= K} φ_n z^n` with a declared radius of
/// absolute convergence (`None` for entire functions).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesSpec {
    pub coeffs: Vec<Complex64>,
    pub radius: Option<f64>,
}

impl PowerSeriesSpec {
    pub fn new(coeffs: Vec<Complex64>, radius: Option<f64>) -> Result<Self> {
        if let Some(r) = radius {
            if !(r > 0.0) {
                return Err(Error::Domain {
                    arg: r,
                    reason: "radius of convergence must be positive",
                });
            }
        }
        Ok(PowerSeriesSpec { coeffs, radius })
    }

    /// `exp(z)` truncated after `z^k`.
    pub fn exp(k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut c = 1.0;
        for n in 0..=k {
            if n > 0 {
                c /= n as f64;
            }
            coeffs.push(Complex64::new(c, 0.0));
        }
        PowerSeriesSpec {
            coeffs,
            radius: None,
        }
    }

    /// `1 / (1 - z)` truncated after `z^k`, radius 1.
    pub fn geometric(k: usize) -> Self {
        PowerSeriesSpec {
            coeffs: vec![Complex64::new(1.0, 0.0); k + 1],
            radius: Some(1.0),
        }
    }

    /// Taylor coefficient `φ^{(k)}(c) / k! = sum_{n >= k} φ_n C(n, k) c^{n-k}`.
    pub fn shifted_coeff(&self, k: usize, c: Complex64) -> Complex64 {
        // Horner in c over n = K..k with binomial weights
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (k..self.coeffs.len()).rev() {
            acc = acc * c + self.coeffs[n] * binomial(n, k);
        }
        acc
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `φ(f) = sum_n φ_n f^{⊗n}`.
///
/// Splits `f = c + g` with `c = E[f]` and `E[g] = 0`. The scalar `c·1` is
/// central, so `f^{⊗n} = sum_k C(n,k) c^{n-k} g^{⊗k}` and
/// `φ(f) = sum_k (φ^{(k)}(c) / k!) g^{⊗k}`. Since `g^{⊗k}` lives on words of
/// length `>= k`, only `k <= max_len` contribute; the scalar Taylor
/// coefficients are summed over all declared `φ_n`. The result is exact on
/// every retained word for the declared polynomial.
///
/// With a finite radius `R`, the convergence condition `|E[f]| < R / B_2`
/// is enforced unless `force` is set.
pub fn apply_series(phi: &PowerSeriesSpec, f: &NcSeries, force: bool) -> Result<NcSeries> {
    let c = f.expectation();
    if let (Some(r), false) = (phi.radius, force) {
        let limit = r / kondratiev_vage_constant(2)?;
        if !(c.norm() < limit) {
            return Err(Error::RadiusViolation {
                modulus: c.norm(),
                limit,
            });
        }
    }
    let trunc = *f.trunc();
    let g = f.sub(&NcSeries::constant(c, trunc));
    let top = trunc.max_len.min(phi.coeffs.len().saturating_sub(1));
    // Horner in g: a_0 + g (a_1 + g (a_2 + ...))
    let mut acc = NcSeries::constant(phi.shifted_coeff(top, c), trunc);
    for k in (0..top).rev() {
        acc = g
            .wick_mul(&acc)
            .add(&NcSeries::constant(phi.shifted_coeff(k, c), trunc));
    }
    Ok(acc)
}

/// The Wick inverse `E[f]^{-1} sum_{n <= L} (1 - f / E[f])^{⊗n}`.
///
/// `h = 1 - f/E[f]` has zero expectation, so `h^{⊗n}` starts at word
/// length `n` and the Neumann series terminates at the truncation length:
/// the result inverts `f` on both sides exactly on every retained word.
pub fn wick_inverse(f: &NcSeries) -> Result<NcSeries> {
    let c = f.expectation();
    if c.norm() < INVERTIBILITY_THRESHOLD {
        return Err(Error::NotInvertible { expectation: c });
    }
    let trunc = *f.trunc();
    let one = NcSeries::unit(trunc);
    let h = neumann_kernel(f)?;
    let mut acc = one.clone();
    for _ in 0..trunc.max_len {
        acc = one.add(&h.wick_mul(&acc));
    }
    Ok(acc.scale(c.inv()))
}

/// `1 - f / E[f]`, the zero-expectation part driving [`wick_inverse`].
pub fn neumann_kernel(f: &NcSeries) -> Result<NcSeries> {
    let c = f.expectation();
    if c.norm() < INVERTIBILITY_THRESHOLD {
        return Err(Error::NotInvertible { expectation: c });
    }
    // 1 - f/c = -(f - c)/c, with the constant removed exactly
    Ok(f.sub(&NcSeries::constant(c, *f.trunc())).scale(-c.inv()))
}

/// The spectrum of `f` is the single point `E[f]`: `f - λ` is invertible
/// exactly when `λ != E[f]`.
pub fn spectrum(f: &NcSeries) -> Complex64 {
    f.expectation()
}

/// Whether `λ` lies in the spectrum, decided by attempting to invert `f - λ`.
pub fn in_spectrum(f: &NcSeries, lambda: Complex64) -> bool {
    let shifted = f.sub(&NcSeries::constant(lambda, *f.trunc()));
    matches!(wick_inverse(&shifted), Err(Error::NotInvertible { .. }))
}

/// `D_m`: deletes one occurrence of the letter `m`, summed over every
/// position holding `m`, extended linearly.
///
/// A run `z_m^α` yields `α` identical deletions, which is the multiplier
/// `α_j` of the run-length form of the operator.
pub fn derivation(m: u32, f: &NcSeries) -> NcSeries {
    let trunc = *f.trunc();
    let pairs = f.iter().flat_map(|(w, c)| {
        w.letters()
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == m)
            .map(move |(k, _)| (w.delete_at(k), *c))
    });
    NcSeries::from_terms(pairs, trunc, crate::series::Admission::Lenient)
        .expect("lenient construction cannot fail")
}

/// `(‖D_m f‖_q^2, (2m)^p ‖f‖_p^2)` with the default weights; the first
/// never exceeds the second when `q >= p + 3`.
pub fn derivation_bound_check(m: u32, f: &NcSeries, p: i32, q: i32) -> Result<(f64, f64)> {
    if q < p + 3 {
        return Err(Error::PreconditionFailed(format!(
            "derivation bound needs q >= p + 3, got p = {p}, q = {q}"
        )));
    }
    let a = WeightSequence::kondratiev();
    let lhs = derivation(m, f).norm_p_squared(q, &a)?;
    let rhs = (2.0 * f64::from(m)).powi(p) * f.norm_p_squared(p, &a)?;
    Ok((lhs, rhs))
}
