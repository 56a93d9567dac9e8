//! JSON encodings of series, matrices, systems and power series.
//!
//! ```text
//! series : {"trunc": {"max_len": L, "max_letter": M}, "terms": [{"word": [..], "re": x, "im": y}, ..]}
//! matrix : {"rows": R, "cols": C, "trunc": {..}, "entries": [[[<term>, ..], ..], ..]}
//! system : {"A": <matrix>, "B": <matrix>, "C": <matrix>, "D": <matrix>}
//! ```
//!
//! Terms are written in graded-lexicographic word order; floats use the
//! shortest round-tripping representation, so parse and serialize are
//! bit-exact inverses.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::calculus::PowerSeriesSpec;
use crate::error::{Error, Result};
use crate::linsys::{AlgebraMatrix, SystemDef};
use crate::series::{Admission, NcSeries, TruncationPolicy};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncJson {
    pub max_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_letter: Option<u32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub drop_tol: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub word: Word,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub trunc: TruncJson,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub trunc: TruncJson,
    pub entries: Vec<Vec<Vec<TermJson>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    #[serde(rename = "C")]
    pub c: MatrixJson,
    #[serde(rename = "D")]
    pub d: MatrixJson,
}

/// Just the pair needed for observability; extra keys (`B`, `D`) are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "C")]
    pub c: MatrixJson,
    #[serde(rename = "A")]
    pub a: MatrixJson,
}

/// Input of the `simulate` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationJson {
    pub h: Vec<MatrixJson>,
    pub u: Vec<MatrixJson>,
}

/// `{"coeffs": [[re, im], ..], "radius": R | null}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSeriesJson {
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    pub radius: Option<f64>,
}

impl From<&TruncationPolicy> for TruncJson {
    fn from(t: &TruncationPolicy) -> Self {
        TruncJson {
            max_len: t.max_len,
            max_letter: t.max_letter,
            drop_tol: t.drop_tol,
        }
    }
}

impl TryFrom<&TruncJson> for TruncationPolicy {
    type Error = Error;

    fn try_from(t: &TruncJson) -> Result<Self> {
        if !(t.drop_tol >= 0.0) {
            return Err(Error::Parse(format!("drop_tol must be >= 0, got {}", t.drop_tol)));
        }
        if t.max_letter == Some(0) {
            return Err(Error::Parse("max_letter must be positive".into()));
        }
        Ok(TruncationPolicy {
            max_len: t.max_len,
            max_letter: t.max_letter,
            drop_tol: t.drop_tol,
        })
    }
}

fn terms_json(s: &NcSeries) -> Vec<TermJson> {
    s.iter()
        .map(|(w, c)| TermJson {
            word: w.clone(),
            re: c.re,
            im: c.im,
        })
        .collect()
}

fn series_from_terms(terms: &[TermJson], trunc: TruncationPolicy) -> Result<NcSeries> {
    for t in terms {
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::Parse(format!("non-finite coefficient at {}", t.word)));
        }
    }
    NcSeries::from_terms(
        terms
            .iter()
            .map(|t| (t.word.clone(), Complex64::new(t.re, t.im))),
        trunc,
        Admission::Strict,
    )
}

impl From<&NcSeries> for SeriesJson {
    fn from(s: &NcSeries) -> Self {
        SeriesJson {
            trunc: s.trunc().into(),
            terms: terms_json(s),
        }
    }
}

impl TryFrom<&SeriesJson> for NcSeries {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        series_from_terms(&j.terms, (&j.trunc).try_into()?)
    }
}

impl From<&AlgebraMatrix> for MatrixJson {
    fn from(m: &AlgebraMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            trunc: m.trunc().into(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| terms_json(m.get(i, j))).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for AlgebraMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<Self> {
        if j.rows == 0 || j.cols == 0 {
            return Err(Error::DimensionMismatch("matrix with an empty dimension".into()));
        }
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::DimensionMismatch(format!(
                "entries do not form a {}x{} grid",
                j.rows, j.cols
            )));
        }
        let trunc: TruncationPolicy = (&j.trunc).try_into()?;
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|terms| series_from_terms(terms, trunc))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMatrix::with_policy(j.rows, j.cols, trunc, entries))
    }
}

impl From<&SystemDef> for SystemJson {
    fn from(s: &SystemDef) -> Self {
        SystemJson {
            a: (&s.a).into(),
            b: (&s.b).into(),
            c: (&s.c).into(),
            d: (&s.d).into(),
        }
    }
}

impl TryFrom<&SystemJson> for SystemDef {
    type Error = Error;

    fn try_from(j: &SystemJson) -> Result<Self> {
        SystemDef::new(
            (&j.a).try_into()?,
            (&j.b).try_into()?,
            (&j.c).try_into()?,
            (&j.d).try_into()?,
        )
    }
}

impl TryFrom<&PowerSeriesJson> for PowerSeriesSpec {
    type Error = Error;

    fn try_from(j: &PowerSeriesJson) -> Result<Self> {
        PowerSeriesSpec::new(
            j.coeffs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
            j.radius,
        )
    }
}

impl From<&PowerSeriesSpec> for PowerSeriesJson {
    fn from(p: &PowerSeriesSpec) -> Self {
        PowerSeriesJson {
            coeffs: p.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            radius: p.radius,
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}

pub fn series_from_json(text: &str) -> Result<NcSeries> {
    NcSeries::try_from(&parse::<SeriesJson>(text)?)
}

pub fn series_to_json(s: &NcSeries) -> String {
    render(&SeriesJson::from(s))
}

pub fn matrix_from_json(text: &str) -> Result<AlgebraMatrix> {
    AlgebraMatrix::try_from(&parse::<MatrixJson>(text)?)
}

pub fn matrix_to_json(m: &AlgebraMatrix) -> String {
    render(&MatrixJson::from(m))
}

pub fn matrices_to_json(ms: &[AlgebraMatrix]) -> String {
    render(&ms.iter().map(MatrixJson::from).collect::<Vec<_>>())
}

pub fn matrices_from_json(text: &str) -> Result<Vec<AlgebraMatrix>> {
    parse::<Vec<MatrixJson>>(text)?
        .iter()
        .map(AlgebraMatrix::try_from)
        .collect()
}

pub fn system_from_json(text: &str) -> Result<SystemDef> {
    SystemDef::try_from(&parse::<SystemJson>(text)?)
}

pub fn system_to_json(s: &SystemDef) -> String {
    render(&SystemJson::from(s))
}

pub fn pair_from_json(text: &str) -> Result<(AlgebraMatrix, AlgebraMatrix)> {
    let j = parse::<PairJson>(text)?;
    Ok(((&j.c).try_into()?, (&j.a).try_into()?))
}

pub fn simulation_from_json(text: &str) -> Result<(Vec<AlgebraMatrix>, Vec<AlgebraMatrix>)> {
    let j = parse::<SimulationJson>(text)?;
    let h = j.h.iter().map(AlgebraMatrix::try_from).collect::<Result<_>>()?;
    let u = j.u.iter().map(AlgebraMatrix::try_from).collect::<Result<_>>()?;
    Ok((h, u))
}

pub fn power_series_from_json(text: &str) -> Result<PowerSeriesSpec> {
    PowerSeriesSpec::try_from(&parse::<PowerSeriesJson>(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::SeriesGenerator;
    use crate::word;
    use proptest::prelude::*;

    #[test]
    fn series_format() {
        let t = TruncationPolicy::new(3).with_max_letter(4);
        let f = NcSeries::from_terms(
            vec![
                (word![2, 1], Complex64::new(0.5, -1.0)),
                (word![], Complex64::new(1.0, 0.0)),
            ],
            t,
            Admission::Strict,
        )
        .unwrap();
        assert_eq!(
            series_to_json(&f),
            r#"{"trunc":{"max_len":3,"max_letter":4},"terms":[{"word":[],"re":1.0,"im":0.0},{"word":[2,1],"re":0.5,"im":-1.0}]}"#
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(series_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            series_from_json(r#"{"trunc":{"max_len":1},"terms":[{"word":[0],"re":1,"im":0}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            series_from_json(r#"{"trunc":{"max_len":1},"terms":[{"word":[1,1],"re":1,"im":0}]}"#),
            Err(Error::TruncationViolation { .. })
        ));
        assert!(matches!(
            matrix_from_json(r#"{"rows":2,"cols":1,"trunc":{"max_len":1},"entries":[[[]]]}"#),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn system_and_phi_round_trip() {
        let mut g = SeriesGenerator::new(3, 3, 3);
        let sys = SystemDef::new(g.matrix(2, 2), g.matrix(2, 1), g.matrix(1, 2), g.matrix(1, 1))
            .unwrap();
        let back = system_from_json(&system_to_json(&sys)).unwrap();
        assert_eq!(back, sys);
        let phi = PowerSeriesSpec::exp(5);
        let text = serde_json::to_string(&PowerSeriesJson::from(&phi)).unwrap();
        assert_eq!(power_series_from_json(&text).unwrap(), phi);
        let (c, a) = pair_from_json(&system_to_json(&sys)).unwrap();
        assert_eq!((c, a), (sys.c, sys.a));
    }

    proptest! {
        #[test]
        fn series_round_trip_is_bit_exact(seed in any::<u64>(), len in 0usize..6, letters in 1u32..9) {
            let f = SeriesGenerator::new(seed, len, letters).series();
            let text = series_to_json(&f);
            let back = series_from_json(&text).unwrap();
            prop_assert_eq!(&back, &f);
            for ((w1, c1), (w2, c2)) in back.iter().zip(f.iter()) {
                prop_assert_eq!(w1, w2);
                prop_assert_eq!(c1.re.to_bits(), c2.re.to_bits());
                prop_assert_eq!(c1.im.to_bits(), c2.im.to_bits());
            }
            prop_assert_eq!(series_to_json(&back), text);
        }

        #[test]
        fn matrix_round_trip(seed in any::<u64>(), rows in 1usize..4, cols in 1usize..4) {
            let m = SeriesGenerator::new(seed, 3, 4).matrix(rows, cols);
            let text = matrix_to_json(&m);
            prop_assert_eq!(matrix_to_json(&matrix_from_json(&text).unwrap()), text);
        }
    }
}
