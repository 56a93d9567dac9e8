//! Command-line front end over the JSON formats in [`crate::io`].
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain error
//! (truncation violation, non-invertible input, violated precondition),
//! 4 violated inequality (an implementation bug, never expected).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::calculus::{apply_series, derivation, wick_inverse};
use crate::error::Error;
use crate::io;
use crate::linsys::{
    is_observable_expectation, kernel_trivial_check, observability_matrix, simulate,
    transfer_taylor,
};
use crate::quantization::{hs_norm_embedding, vage_constant, zeta, EmbeddingSpec};
use crate::random::SeriesGenerator;
use crate::series::{white_noise_blowup_demo, NcSeries};
use crate::word::WeightSequence;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ncwick", version, about = "Non-commutative Wick algebra toolkit")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Fixed reduction orders. All reductions are already sequential with a
    /// fixed order, so this only documents intent.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Re-truncate inputs to this word length.
    #[arg(long, global = true)]
    pub trunc_len: Option<usize>,
    /// Re-truncate inputs to letters up to this value.
    #[arg(long, global = true)]
    pub max_letter: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wick product f ⊗ g.
    Mul { f: PathBuf, g: PathBuf },
    /// Graded norm ‖f‖_p with the default weights.
    Norm {
        f: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
    },
    /// Wick inverse.
    Invert { f: PathBuf },
    /// Power series φ(f).
    Apply {
        f: PathBuf,
        /// JSON `{"coeffs": [[re, im], ...], "radius": R}`.
        #[arg(long)]
        phi: PathBuf,
        /// Skip the |E[f]| < R/B_2 check.
        #[arg(long)]
        force: bool,
    },
    /// Derivation D_m.
    Dm {
        f: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Hilbert-Schmidt norm and Våge constant B_{q-p}.
    VageConst {
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
    },
    /// Random audit of ‖f⊗g‖_q, ‖g⊗f‖_q <= B_{q-p} ‖f‖_p ‖g‖_q.
    VageCheck {
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Convolution y_n = sum h_m ⊗ u_{n-m}; input `{"h": [..], "u": [..]}`.
    Simulate {
        input: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Taylor coefficients h_0..h_steps of a realization.
    Realize {
        system: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Observability of (C, A): expectation rank test and kernel recursion.
    Observable {
        pair: PathBuf,
        /// Horizon; defaults to the state dimension.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Norm growth showing the white-noise space is not Wick closed.
    BlowupDemo {
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::ZeroLetter => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// Formats with 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..17).contains(&exponent) {
        let decimals = (16 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.16e}")
    }
}

struct Context<'a> {
    cli: &'a Cli,
    stdout: &'a mut dyn Write,
}

impl Context<'_> {
    fn read(&self, path: &Path) -> Result<String, Failure> {
        fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
    }

    fn read_series(&self, path: &Path) -> Result<NcSeries, Failure> {
        let f = io::series_from_json(&self.read(path)?)?;
        Ok(self.retruncate(f))
    }

    fn retruncate(&self, f: NcSeries) -> NcSeries {
        if self.cli.trunc_len.is_none() && self.cli.max_letter.is_none() {
            return f;
        }
        let mut t = *f.trunc();
        if let Some(l) = self.cli.trunc_len {
            t.max_len = t.max_len.min(l);
        }
        if let Some(m) = self.cli.max_letter {
            t.max_letter = Some(t.max_letter.map_or(m, |x| x.min(m)));
        }
        f.with_trunc(t)
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        match &self.cli.out {
            Some(path) => fs::write(path, format!("{text}\n"))
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => writeln!(self.stdout, "{text}")
                .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
        }
    }

    fn say(&mut self, text: &str) -> Result<(), Failure> {
        writeln!(self.stdout, "{text}").map_err(|e| Failure::Usage(e.to_string()))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let mut ctx = Context {
        cli: &cli,
        stdout,
    };
    match dispatch(&mut ctx) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(stderr, "violation: {msg}");
            EXIT_VIOLATION
        }
    }
}

fn dispatch(ctx: &mut Context<'_>) -> Result<i32, Failure> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Mul { f, g } => {
            let (f, g) = (ctx.read_series(f)?, ctx.read_series(g)?);
            ctx.emit(&io::series_to_json(&f.wick_mul(&g)))?;
        }
        Command::Norm { f, p } => {
            let f = ctx.read_series(f)?;
            let norm = f.norm_p(*p, &WeightSequence::kondratiev())?;
            ctx.emit(&format_real(norm))?;
        }
        Command::Invert { f } => {
            let f = ctx.read_series(f)?;
            ctx.emit(&io::series_to_json(&wick_inverse(&f)?))?;
        }
        Command::Apply { f, phi, force } => {
            let f = ctx.read_series(f)?;
            let phi = io::power_series_from_json(&ctx.read(phi)?)?;
            ctx.emit(&io::series_to_json(&apply_series(&phi, &f, *force)?))?;
        }
        Command::Dm { f, m } => {
            if *m == 0 {
                return Err(Failure::Usage("--m must be a positive letter".into()));
            }
            let f = ctx.read_series(f)?;
            ctx.emit(&io::series_to_json(&derivation(*m, &f)))?;
        }
        Command::VageConst { p, q } => {
            if q <= p {
                return Err(Failure::Usage(format!("need q > p, got p = {p}, q = {q}")));
            }
            let spec = EmbeddingSpec::kondratiev(*q, *p)?;
            let gap = f64::from(q - p);
            let mut lines = vec![format!("zeta({}) = {}", q - p, zeta(gap).map(format_real).unwrap_or_else(|_| "inf".into()))];
            lines.push(format!(
                "hs_norm = {}",
                hs_norm_embedding(&spec).map(format_real).unwrap_or_else(|_| "inf".into())
            ));
            lines.push(format!("B_{} = {}", q - p, format_real(vage_constant(&spec)?)));
            ctx.emit(&lines.join("\n"))?;
        }
        Command::VageCheck { p, q, trials } => return vage_check(ctx, *p, *q, *trials),
        Command::Simulate { input, steps } => {
            let (h, u) = io::simulation_from_json(&ctx.read(input)?)?;
            ctx.emit(&io::matrices_to_json(&simulate(&h, &u, *steps)?))?;
        }
        Command::Realize { system, steps } => {
            let sys = io::system_from_json(&ctx.read(system)?)?;
            ctx.emit(&io::matrices_to_json(&transfer_taylor(&sys, *steps)?))?;
        }
        Command::Observable { pair, steps } => {
            let (c, a) = io::pair_from_json(&ctx.read(pair)?)?;
            let steps = steps.unwrap_or(a.rows());
            let expectation = is_observable_expectation(&c, &a, steps)?;
            // build eagerly so shape errors surface before the verdict
            observability_matrix(&c, &a, steps)?;
            let kernel = if expectation {
                kernel_trivial_check(&c, &a, steps)?
            } else {
                false
            };
            ctx.emit(&format!(
                "expectation_observable: {expectation}\nkernel_trivial: {kernel}"
            ))?;
            if !expectation {
                return Err(Failure::Domain(
                    "precondition failed: (E[C], E[A]) is not observable, kernel recursion not applicable"
                        .into(),
                ));
            }
            if !kernel {
                return Err(Failure::Violation(
                    "graded recursion left a nonzero kernel element".into(),
                ));
            }
        }
        Command::BlowupDemo { steps } => {
            if *steps == 0 {
                return Err(Failure::Usage("--steps must be at least 1".into()));
            }
            let lines: Vec<_> = white_noise_blowup_demo(*steps)
                .into_iter()
                .enumerate()
                .map(|(k, v)| format!("{} {}", k + 1, format_real(v)))
                .collect();
            ctx.emit(&lines.join("\n"))?;
        }
    }
    Ok(EXIT_OK)
}

fn vage_check(ctx: &mut Context<'_>, p: i32, q: i32, trials: usize) -> Result<i32, Failure> {
    if q < p + 2 {
        return Err(Failure::Usage(format!(
            "the inequality needs q >= p + 2, got p = {p}, q = {q}"
        )));
    }
    let b = vage_constant(&EmbeddingSpec::kondratiev(q, p)?)?;
    let report = vage_audit(p, q, trials, ctx.cli.seed, ctx.cli.trunc_len.unwrap_or(6), ctx.cli.max_letter.unwrap_or(8))?;
    ctx.say(&format!("B_{} = {}", q - p, format_real(b)))?;
    ctx.say(&format!("trials = {trials}"))?;
    ctx.say(&format!("max_ratio_fg = {}", format_real(report.max_ratio_fg)))?;
    ctx.say(&format!("max_ratio_gf = {}", format_real(report.max_ratio_gf)))?;
    ctx.say(&format!("violations = {}", report.violations))?;
    if report.violations > 0 {
        return Err(Failure::Violation(format!(
            "{} of {trials} pairs exceed B_{}",
            report.violations,
            q - p
        )));
    }
    Ok(EXIT_OK)
}

/// Result of [`vage_audit`].
#[derive(Clone, Debug, PartialEq)]
pub struct VageReport {
    pub bound: f64,
    pub max_ratio_fg: f64,
    pub max_ratio_gf: f64,
    pub violations: usize,
}

/// Checks both one-sided Våge inequalities on `trials` random pairs.
/// Ratios are `‖f⊗g‖_q / (‖f‖_p ‖g‖_q)` and the mirrored one; a pair
/// violates if either side exceeds `B_{q-p} ‖f‖_p ‖g‖_q`.
pub fn vage_audit(
    p: i32,
    q: i32,
    trials: usize,
    seed: u64,
    max_len: usize,
    max_letter: u32,
) -> crate::error::Result<VageReport> {
    let a = WeightSequence::kondratiev();
    let bound = vage_constant(&EmbeddingSpec::kondratiev(q, p)?)?;
    let mut gen = SeriesGenerator::new(seed, max_len, max_letter);
    let mut report = VageReport {
        bound,
        max_ratio_fg: 0.0,
        max_ratio_gf: 0.0,
        violations: 0,
    };
    for _ in 0..trials {
        let (f, g) = (gen.series(), gen.series());
        let rhs = f.norm_p(p, &a)? * g.norm_p(q, &a)?;
        let fg = f.wick_mul(&g).norm_p(q, &a)?;
        let gf = g.wick_mul(&f).norm_p(q, &a)?;
        if fg > bound * rhs || gf > bound * rhs {
            report.violations += 1;
        }
        if rhs > 0.0 {
            report.max_ratio_fg = report.max_ratio_fg.max(fg / rhs);
            report.max_ratio_gf = report.max_ratio_gf.max(gf / rhs);
        }
    }
    Ok(report)
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
