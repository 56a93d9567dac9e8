//! Analytic constants: the Riemann zeta function, Hilbert-Schmidt norms of
//! the embeddings `T_{q,p}: K_q -> K_p`, their second quantizations and the
//! Våge constants `B_{q-p}`.
//!
//! For a weight sequence `a` the embedding has singular values
//! `a_n^{-(q-p)/2}`, so `‖T_{q,p}‖_HS^2 = sum_n a_n^{-(q-p)}`. Its second
//! quantization acts diagonally on words, and summing over the free monoid
//! by word length gives a geometric series:
//!
//! ```text
//! ‖Γ(T_{q,p})‖_HS^2 = sum_alpha b_alpha^{-(q-p)} = 1 / (1 - ‖T_{q,p}‖_HS^2) = B_{q-p}^2
//! ```
//!
//! (Some write the left side as `‖T_{q,p}‖_HS`; it is the norm of `Γ(T)`.)

use crate::error::{Error, Result};
use crate::word::{WeightSequence, Word};

/// Riemann zeta for real `s > 1`, to about 1e-15 absolute.
///
/// Direct sum of the first `N - 1` terms plus the Euler-Maclaurin tail
/// through the `N^{-s-3}` term. `N` is grown until the first omitted
/// term, `s(s+1)(s+2)(s+3)(s+4) N^{-s-5} / 30240`, is below 1e-16.
pub fn zeta(s: f64) -> Result<f64> {
    const MIN_GAP: f64 = 1e-6;
    if s.is_nan() || s < 1.0 + MIN_GAP {
        return Err(Error::Domain {
            arg: s,
            reason: "zeta needs s > 1",
        });
    }
    let rising5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0);
    let mut n: u32 = 8;
    while rising5 / 30240.0 * f64::from(n).powf(-s - 5.0) > 1e-16 && n < (1 << 20) {
        n *= 2;
    }
    let nf = f64::from(n);
    // smallest terms first
    let head: f64 = (1..n).rev().map(|k| f64::from(k).powf(-s)).sum();
    let tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * nf.powf(-s - 3.0);
    Ok(head + tail)
}

/// The embedding `T_{q,p}: K_q -> K_p` for a weight sequence.
#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    pub weights: WeightSequence,
    pub q: i32,
    pub p: i32,
}

impl EmbeddingSpec {
    pub fn new(weights: WeightSequence, q: i32, p: i32) -> Result<Self> {
        if q <= p {
            return Err(Error::PreconditionFailed(format!(
                "embedding needs q > p, got q = {q}, p = {p}"
            )));
        }
        Ok(EmbeddingSpec { weights, q, p })
    }

    /// Default (`a_n = 2n`) weights.
    pub fn kondratiev(q: i32, p: i32) -> Result<Self> {
        Self::new(WeightSequence::kondratiev(), q, p)
    }

    pub fn gap(&self) -> i32 {
        self.q - self.p
    }

    /// Singular value `a_n^{-(q-p)/2}` on the `n`-th basis vector.
    pub fn singular_value(&self, n: u32) -> f64 {
        self.weights.get(n).powf(-f64::from(self.gap()) / 2.0)
    }

    /// `‖T_{q,p}‖_HS^2 = sum_n a_n^{-(q-p)}`.
    pub fn hs_norm_squared(&self) -> Result<f64> {
        let s = f64::from(self.gap());
        self.weights
            .letter_sum(s)
            .ok_or(Error::Divergent { exponent: s })
    }
}

/// `‖T_{q,p}‖_HS`.
pub fn hs_norm_embedding(spec: &EmbeddingSpec) -> Result<f64> {
    Ok(spec.hs_norm_squared()?.sqrt())
}

/// `B_{q-p} = ‖Γ(T_{q,p})‖_HS = (1 - ‖T_{q,p}‖_HS^2)^{-1/2}`.
///
/// With the default weights this is `(1 - 2^{-(q-p)} ζ(q-p))^{-1/2}`,
/// finite for `q >= p + 2` because `ζ(s) < 2^s` for `s >= 2`.
pub fn vage_constant(spec: &EmbeddingSpec) -> Result<f64> {
    let t = match spec.hs_norm_squared() {
        Ok(t) => t,
        Err(Error::Divergent { .. }) => {
            return Err(Error::NotContractive {
                hs_norm: f64::INFINITY,
            })
        }
        Err(e) => return Err(e),
    };
    if t >= 1.0 {
        return Err(Error::NotContractive { hs_norm: t.sqrt() });
    }
    Ok((1.0 - t).sqrt().recip())
}

/// `B_{q-p}` for the default weights.
pub fn kondratiev_vage_constant(gap: i32) -> Result<f64> {
    vage_constant(&EmbeddingSpec::kondratiev(gap, 0)?)
}

/// `sum_{|alpha| <= max_len} b_alpha^{-s} = sum_{n <= max_len} t^n` with
/// `t = sum_i a_i^{-s}`.
pub fn monoid_weight_sum(weights: &WeightSequence, s: i32, max_len: usize) -> Result<f64> {
    let sf = f64::from(s);
    let t = weights
        .letter_sum(sf)
        .filter(|&t| t < 1.0)
        .ok_or(Error::Divergent { exponent: sf })?;
    Ok(graded_geometric_sum(t, max_len))
}

/// `sum_{n=0}^{max_len} t^n`, accumulated by Horner.
pub fn graded_geometric_sum(t: f64, max_len: usize) -> f64 {
    (0..max_len).fold(1.0, |acc, _| 1.0 + t * acc)
}

/// Upper bound `t^{L+1} / (1 - t)` on the part of the monoid sum carried by
/// words longer than `L`.
pub fn geometric_tail_bound(t: f64, max_len: usize) -> f64 {
    t.powi(max_len as i32 + 1) / (1.0 - t)
}

/// `λ_N^w = prod_k λ_{w_k}`, the eigenvalue of `Γ(T)` on the basis word `w`
/// when `T` has singular values `λ_n` (every `λ_n` in `[0, 1]`).
pub fn second_quantization_image<L>(lambdas: L, w: &Word) -> Result<f64>
where
    L: Fn(u32) -> f64,
{
    w.letters().iter().try_fold(1.0, |acc, &l| {
        let lambda = lambdas(l);
        if (0.0..=1.0).contains(&lambda) {
            Ok(acc * lambda)
        } else {
            Err(Error::Domain {
                arg: lambda,
                reason: "singular values of a contraction lie in [0, 1]",
            })
        }
    })
}

/// `‖Γ(T)‖_HS^2 = 1 / (1 - sum_n λ_n^2)` from the letter sum `sum_n λ_n^2`.
pub fn second_quantization_hs_squared(lambda_sq_sum: f64) -> Result<f64> {
    if !(lambda_sq_sum < 1.0) {
        return Err(Error::NotContractive {
            hs_norm: lambda_sq_sum.sqrt(),
        });
    }
    Ok(1.0 / (1.0 - lambda_sq_sum))
}
