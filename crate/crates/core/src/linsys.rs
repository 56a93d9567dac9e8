//! Linear systems over the non-commutative algebra.
//!
//! Matrices carry series entries and multiply with the Wick product in the
//! written order. The observability matrix stacks the blocks
//! `C, C A, ..., C A^{steps-1}` vertically, so observability means the
//! stacked matrix acting on state vectors `f` in `algebra^N` is left
//! invertible, i.e. `O f = 0` forces `f = 0`.
//!
//! If the expectation pair `(E[C], E[A])` is observable over the complex
//! numbers, then so is `(C, A)` over the algebra. [`kernel_trivial_check`]
//! replays that argument on the truncated algebra: reading off the
//! coefficient of a word `γ` in `O f` gives
//! `M_0 f_γ = r_γ - sum_{β nonempty prefix of γ} O_β f_{β^{-1}γ}`, where
//! `M_0 = E[O]` has full column rank, and the system is solved by increasing
//! word length.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantization::kondratiev_vage_constant;
use crate::series::{NcSeries, TruncationPolicy};
use crate::word::{WeightSequence, Word};

/// Relative singular-value threshold factor for numerical rank.
pub const RANK_RTOL: f64 = 1e-12;
/// Residual tolerance of the graded solve.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// A dense `rows x cols` matrix of series sharing one truncation policy.
#[derive(Clone, PartialEq)]
pub struct AlgebraMatrix {
    rows: usize,
    cols: usize,
    trunc: TruncationPolicy,
    entries: Vec<NcSeries>,
}

impl AlgebraMatrix {
    pub fn zeros(rows: usize, cols: usize, trunc: TruncationPolicy) -> Self {
        AlgebraMatrix {
            rows,
            cols,
            trunc,
            entries: vec![NcSeries::zero(trunc); rows * cols],
        }
    }

    /// Unit series on the diagonal.
    pub fn identity(n: usize, trunc: TruncationPolicy) -> Self {
        let mut m = Self::zeros(n, n, trunc);
        for i in 0..n {
            m.entries[i * n + i] = NcSeries::unit(trunc);
        }
        m
    }

    /// Builds a matrix from row-major entries. Entries with a different
    /// policy are coerced to the common coarsest one.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<NcSeries>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let trunc = entries
            .iter()
            .skip(1)
            .fold(*entries[0].trunc(), |t, e| t.coarsest(e.trunc()));
        Ok(Self::with_policy(rows, cols, trunc, entries))
    }

    /// Like [`AlgebraMatrix::from_entries`] but with an explicit policy.
    pub fn with_policy(
        rows: usize,
        cols: usize,
        trunc: TruncationPolicy,
        entries: Vec<NcSeries>,
    ) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        let entries = entries
            .into_iter()
            .map(|e| {
                if *e.trunc() == trunc {
                    e
                } else {
                    e.with_trunc(trunc)
                }
            })
            .collect();
        AlgebraMatrix {
            rows,
            cols,
            trunc,
            entries,
        }
    }

    /// Constant-series matrix from a complex matrix.
    pub fn from_complex(m: &DMatrix<Complex64>, trunc: TruncationPolicy) -> Self {
        let (rows, cols) = m.shape();
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| NcSeries::constant(m[(i, j)], trunc))
            .collect();
        AlgebraMatrix {
            rows,
            cols,
            trunc,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn trunc(&self) -> &TruncationPolicy {
        &self.trunc
    }

    pub fn get(&self, i: usize, j: usize) -> &NcSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: NcSeries) {
        let value = if *value.trunc() == self.trunc {
            value
        } else {
            value.with_trunc(self.trunc)
        };
        self.entries[i * self.cols + j] = value;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[NcSeries] {
        &self.entries
    }

    /// `(X Y)_{ij} = sum_k X_{ik} ⊗ Y_{kj}`, accumulated in increasing `k`.
    pub fn mat_mul(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let trunc = self.trunc.coarsest(&other.trunc);
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NcSeries::zero(trunc);
                for k in 0..self.cols {
                    let (x, y) = (self.get(i, k), other.get(k, j));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.wick_mul(y));
                }
                entries.push(acc);
            }
        }
        Ok(AlgebraMatrix {
            rows: self.rows,
            cols: other.cols,
            trunc,
            entries,
        })
    }

    pub fn add(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let trunc = self.trunc.coarsest(&other.trunc);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x.add(y))
            .collect();
        Ok(AlgebraMatrix {
            rows: self.rows,
            cols: self.cols,
            trunc,
            entries,
        })
    }

    pub fn scale(&self, c: Complex64) -> AlgebraMatrix {
        AlgebraMatrix {
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NcSeries::is_zero)
    }

    /// `A^{⊗k}` by repeated multiplication; `A^0` is the identity.
    pub fn pow(&self, k: usize) -> Result<AlgebraMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "power of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = AlgebraMatrix::identity(self.rows, self.trunc);
        for _ in 0..k {
            acc = acc.mat_mul(self)?;
        }
        Ok(acc)
    }

    /// Stacks `blocks` vertically.
    pub fn vstack(blocks: &[AlgebraMatrix]) -> Result<AlgebraMatrix> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("nothing to stack".into()))?;
        if let Some(b) = blocks.iter().find(|b| b.cols != first.cols) {
            return Err(Error::DimensionMismatch(format!(
                "stacking blocks with {} and {} columns",
                first.cols, b.cols
            )));
        }
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        let rows = blocks.iter().map(|b| b.rows).sum();
        AlgebraMatrix::from_entries(rows, first.cols, entries)
    }

    /// The complex matrix of coefficients of `w` in every entry; `w = ∅`
    /// gives the expectation matrix.
    pub fn coefficient_matrix(&self, w: &Word) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(w))
    }

    /// Every word in the support of some entry, in graded-lex order.
    pub fn support(&self) -> Vec<Word> {
        let mut words: Vec<Word> = self
            .entries
            .iter()
            .flat_map(|e| e.iter().map(|(w, _)| w.clone()))
            .collect();
        words.sort();
        words.dedup();
        words
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.entries.iter().filter_map(NcSeries::max_letter).max()
    }

    /// Largest `‖X_{ij}‖_p` over the entries.
    pub fn max_entry_norm(&self, p: i32, weights: &WeightSequence) -> Result<f64> {
        self.entries
            .iter()
            .try_fold(0.0f64, |m, e| Ok(m.max(e.norm_p(p, weights)?)))
    }
}

impl fmt::Debug for AlgebraMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgebraMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?}; ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Entry-wise generalized expectation, a homomorphism onto complex matrices.
pub fn expectation_matrix(x: &AlgebraMatrix) -> DMatrix<Complex64> {
    x.coefficient_matrix(&Word::empty())
}

/// The input-output convolution `y_n = sum_{m=0}^{n} h_m ⊗ u_{n-m}` for
/// `n < n_steps`. Missing `h_m` or `u_k` beyond the given sequences count as
/// zero.
pub fn simulate(
    h: &[AlgebraMatrix],
    u: &[AlgebraMatrix],
    n_steps: usize,
) -> Result<Vec<AlgebraMatrix>> {
    let (Some(h0), false) = (h.first(), u.is_empty()) else {
        return Err(Error::DimensionMismatch(
            "impulse response and input must be nonempty".into(),
        ));
    };
    let (p_out, q_in) = h0.shape();
    if let Some(bad) = h.iter().find(|m| m.shape() != (p_out, q_in)) {
        return Err(Error::DimensionMismatch(format!(
            "impulse response mixes {p_out}x{q_in} and {}x{}",
            bad.rows, bad.cols
        )));
    }
    if let Some(bad) = u.iter().find(|m| m.shape() != (q_in, 1)) {
        return Err(Error::DimensionMismatch(format!(
            "inputs must be {q_in}x1 columns, got {}x{}",
            bad.rows, bad.cols
        )));
    }
    let trunc = h
        .iter()
        .chain(u)
        .fold(*h0.trunc(), |t, m| t.coarsest(m.trunc()));
    let mut ys = Vec::with_capacity(n_steps);
    for n in 0..n_steps {
        let mut y = AlgebraMatrix::zeros(p_out, 1, trunc);
        for m in 0..=n {
            if let (Some(hm), Some(uk)) = (h.get(m), u.get(n - m)) {
                y = y.add(&hm.mat_mul(uk)?)?;
            }
        }
        ys.push(y);
    }
    Ok(ys)
}

/// A realization `H(z) = D + z C ⊗ (I - z A)^{-1} B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemDef {
    pub a: AlgebraMatrix,
    pub b: AlgebraMatrix,
    pub c: AlgebraMatrix,
    pub d: AlgebraMatrix,
}

impl SystemDef {
    pub fn new(
        a: AlgebraMatrix,
        b: AlgebraMatrix,
        c: AlgebraMatrix,
        d: AlgebraMatrix,
    ) -> Result<Self> {
        let n = a.rows;
        let ok = a.cols == n
            && b.rows == n
            && c.cols == n
            && d.rows == c.rows
            && d.cols == b.cols;
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "A {}x{}, B {}x{}, C {}x{}, D {}x{} do not form a realization",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
            )));
        }
        Ok(SystemDef { a, b, c, d })
    }

    pub fn state_dim(&self) -> usize {
        self.a.rows
    }

    /// A radius `r` such that the Taylor series of `H` converges for
    /// `|z| < r`, from `‖(A^k)_{ij}‖_{p+2} <= (N B_2 max‖A_ij‖_p)^k / B_2`.
    /// Not enforced anywhere; truncated coefficients are always finite.
    pub fn taylor_radius_certificate(&self, p: i32) -> Result<f64> {
        let b2 = kondratiev_vage_constant(2)?;
        let norm = self.a.max_entry_norm(p, &WeightSequence::kondratiev())?;
        Ok(1.0 / (b2 * self.state_dim() as f64 * norm))
    }
}

/// Taylor coefficients `h_0 = D`, `h_k = C A^{k-1} B` of the transfer
/// function, for `k <= order`.
pub fn transfer_taylor(sys: &SystemDef, order: usize) -> Result<Vec<AlgebraMatrix>> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(sys.d.clone());
    // C A^{k-1}, advanced on the right
    let mut ca = sys.c.clone();
    for k in 1..=order {
        if k > 1 {
            ca = ca.mat_mul(&sys.a)?;
        }
        out.push(ca.mat_mul(&sys.b)?);
    }
    Ok(out)
}

fn check_pair(c: &AlgebraMatrix, a: &AlgebraMatrix, steps: usize) -> Result<()> {
    if a.rows != a.cols || c.cols != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "observability needs square A and matching C, got A {}x{}, C {}x{}",
            a.rows, a.cols, c.rows, c.cols
        )));
    }
    if steps == 0 {
        return Err(Error::PreconditionFailed("steps must be at least 1".into()));
    }
    Ok(())
}

/// `(C; C A; ...; C A^{steps-1})`, stacked vertically.
pub fn observability_matrix(
    c: &AlgebraMatrix,
    a: &AlgebraMatrix,
    steps: usize,
) -> Result<AlgebraMatrix> {
    check_pair(c, a, steps)?;
    let mut blocks = Vec::with_capacity(steps);
    let mut block = c.clone();
    for k in 0..steps {
        if k > 0 {
            block = block.mat_mul(a)?;
        }
        blocks.push(block.clone());
    }
    AlgebraMatrix::vstack(&blocks)
}

/// Numerical rank: singular values above `σ_max · max(rows, cols) · 1e-12`.
pub fn numerical_rank(m: &DMatrix<Complex64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    let tol = smax * m.nrows().max(m.ncols()) as f64 * RANK_RTOL;
    sv.iter().filter(|&&s| s > tol).count()
}

/// Whether the complex pair `(E[C], E[A])` is observable within `steps`
/// blocks: the stacked expectation matrix has full column rank `N`.
pub fn is_observable_expectation(
    c: &AlgebraMatrix,
    a: &AlgebraMatrix,
    steps: usize,
) -> Result<bool> {
    check_pair(c, a, steps)?;
    let m0 = expectation_observability(c, a, steps);
    Ok(numerical_rank(&m0) == a.rows)
}

/// Observability with horizon equal to the state dimension.
pub fn is_strongly_observable_expectation(c: &AlgebraMatrix, a: &AlgebraMatrix) -> Result<bool> {
    is_observable_expectation(c, a, a.rows)
}

/// `(E[C]; E[C]E[A]; ...)` computed in complex arithmetic.
pub fn expectation_observability(
    c: &AlgebraMatrix,
    a: &AlgebraMatrix,
    steps: usize,
) -> DMatrix<Complex64> {
    let (ec, ea) = (expectation_matrix(c), expectation_matrix(a));
    let (p, n) = ec.shape();
    let mut out = DMatrix::zeros(p * steps, n);
    let mut block = ec;
    for k in 0..steps {
        if k > 0 {
            block = &block * &ea;
        }
        out.view_mut((k * p, 0), (p, n)).copy_from(&block);
    }
    out
}

/// Outcome of [`solve_graded`].
#[derive(Clone, Debug)]
pub struct GradedSolution {
    /// State vector `f` as an `N x 1` matrix.
    pub state: AlgebraMatrix,
    /// Largest `‖M_0 f_γ - rhs_γ‖` over all words.
    pub max_residual: f64,
    /// Number of words solved for.
    pub words: usize,
}

/// Solves `O f = r` word by word, by increasing length, using the
/// pseudo-inverse of `M_0 = E[O]`.
///
/// Words range over all words up to the truncation length with letters up
/// to the policy's `max_letter` (or, if unbounded, the largest letter in
/// `O` or `r`). Fails with `PreconditionFailed` if `M_0` lacks full column
/// rank.
pub fn solve_graded(o: &AlgebraMatrix, rhs: &AlgebraMatrix) -> Result<GradedSolution> {
    if rhs.shape() != (o.rows, 1) {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side must be {}x1, got {}x{}",
            o.rows, rhs.rows, rhs.cols
        )));
    }
    let n = o.cols;
    let m0 = expectation_matrix(o);
    if numerical_rank(&m0) < n {
        return Err(Error::PreconditionFailed(
            "expectation of the observability matrix is not left invertible".into(),
        ));
    }
    let trunc = o.trunc.coarsest(&rhs.trunc);
    let pinv = m0
        .clone()
        .pseudo_inverse(0.0)
        .map_err(|e| Error::PreconditionFailed(e.to_string()))?;

    // nonempty prefixes β of γ with O_β != 0
    let blocks: BTreeMap<Word, DMatrix<Complex64>> = o
        .support()
        .into_iter()
        .filter(|w| !w.is_empty())
        .map(|w| {
            let m = o.coefficient_matrix(&w);
            (w, m)
        })
        .collect();
    let alphabet = trunc
        .max_letter
        .or_else(|| o.max_letter().max(rhs.max_letter()))
        .unwrap_or(1);

    let mut solution: BTreeMap<Word, nalgebra::DVector<Complex64>> = BTreeMap::new();
    let mut max_residual = 0.0f64;
    let mut count = 0;
    let mut level = vec![Word::empty()];
    for len in 0..=trunc.max_len {
        if len > 0 {
            level = level
                .iter()
                .flat_map(|w| (1..=alphabet).map(move |l| w.concat(&Word::new(vec![l]).unwrap())))
                .collect();
        }
        for gamma in &level {
            let mut r = nalgebra::DVector::from_fn(o.rows, |i, _| rhs.get(i, 0).coeff(gamma));
            for k in 1..=gamma.len() {
                let beta = Word::new(gamma.letters()[..k].to_vec())?;
                if let Some(ob) = blocks.get(&beta) {
                    let tail = Word::new(gamma.letters()[k..].to_vec())?;
                    if let Some(fd) = solution.get(&tail) {
                        r -= ob * fd;
                    }
                }
            }
            let f_gamma = &pinv * &r;
            let residual = (&m0 * &f_gamma - &r).norm();
            max_residual = max_residual.max(residual);
            count += 1;
            if f_gamma.iter().any(|x| *x != Complex64::new(0.0, 0.0)) {
                solution.insert(gamma.clone(), f_gamma);
            }
        }
    }

    let mut state = AlgebraMatrix::zeros(n, 1, trunc);
    for i in 0..n {
        let entry = NcSeries::from_terms(
            solution.iter().map(|(w, v)| (w.clone(), v[i])),
            trunc,
            crate::series::Admission::Lenient,
        )?;
        state.set(i, 0, entry);
    }
    Ok(GradedSolution {
        state,
        max_residual,
        words: count,
    })
}

/// Replays the observability argument on the truncated algebra: with
/// `O f = 0`, the graded recursion must produce `f_γ = 0` for every word.
///
/// Errors with `PreconditionFailed` when `(E[C], E[A])` is not observable
/// within `steps`, since nothing can then be concluded.
pub fn kernel_trivial_check(c: &AlgebraMatrix, a: &AlgebraMatrix, steps: usize) -> Result<bool> {
    if !is_observable_expectation(c, a, steps)? {
        return Err(Error::PreconditionFailed(
            "the expectation pair (E[C], E[A]) is not observable".into(),
        ));
    }
    let o = observability_matrix(c, a, steps)?;
    let zero = AlgebraMatrix::zeros(o.rows, 1, o.trunc);
    let sol = solve_graded(&o, &zero)?;
    let zero_state = sol
        .state
        .entries()
        .iter()
        .all(|e| e.max_abs() <= RESIDUAL_TOL);
    Ok(zero_state && sol.max_residual <= RESIDUAL_TOL)
}
