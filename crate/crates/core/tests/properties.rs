mod common;

use ncwick::linsys::expectation_matrix;
use ncwick::random::SeriesGenerator;
use ncwick::series::white_noise_blowup_demo;
use ncwick::{
    derivation, wick_inverse, Admission, AlgebraMatrix, Complex64, NcSeries, TruncationPolicy,
    WeightSequence, Word,
};
use proptest::prelude::*;

use common::*;

const MAX_LEN: usize = 6;

fn trunc() -> TruncationPolicy {
    TruncationPolicy::new(MAX_LEN).with_max_letter(4)
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=4, 0..=max_len)
}

fn series_strategy(max_len: usize) -> impl Strategy<Value = NcSeries> {
    prop::collection::vec((word_strategy(max_len), -4.0f64..4.0, -4.0f64..4.0), 0..8).prop_map(
        |terms| {
            NcSeries::from_terms(
                terms
                    .into_iter()
                    .map(|(w, re, im)| (Word::new(w).unwrap(), Complex64::new(re, im))),
                trunc(),
                Admission::Strict,
            )
            .unwrap()
        },
    )
}

fn relative_diff(a: &NcSeries, b: &NcSeries) -> f64 {
    max_diff(&to_map(a), &to_map(b)) / (1.0 + a.max_abs().max(b.max_abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative(
        f in series_strategy(3), g in series_strategy(3), h in series_strategy(3)
    ) {
        let left = f.wick_mul(&g).wick_mul(&h);
        let right = f.wick_mul(&g.wick_mul(&h));
        prop_assert!(relative_diff(&left, &right) <= 1e-10);
    }

    #[test]
    fn unit_is_two_sided(f in series_strategy(MAX_LEN)) {
        let one = NcSeries::unit(trunc());
        prop_assert_eq!(one.wick_mul(&f), f.clone());
        prop_assert_eq!(f.wick_mul(&one), f);
    }

    #[test]
    fn product_matches_oracle(f in series_strategy(4), g in series_strategy(4)) {
        prop_assert_eq!(to_map(&f.wick_mul(&g)), oracle_mul(&to_map(&f), &to_map(&g), MAX_LEN));
    }

    #[test]
    fn expectation_is_a_homomorphism(f in series_strategy(MAX_LEN), g in series_strategy(MAX_LEN)) {
        prop_assert_eq!(f.add(&g).expectation(), f.expectation() + g.expectation());
        prop_assert_eq!(f.wick_mul(&g).expectation(), f.expectation() * g.expectation());
        prop_assert_eq!(NcSeries::unit(trunc()).expectation(), c(1.0));
    }

    #[test]
    fn expectation_bounded_by_every_norm(f in series_strategy(MAX_LEN), p in -3i32..6) {
        let n = f.norm_p(p, &WeightSequence::kondratiev()).unwrap();
        prop_assert!(f.expectation().norm() <= n * (1.0 + 1e-15));
    }

    #[test]
    fn norms_decrease_in_p(f in series_strategy(MAX_LEN), p in -3i32..6) {
        let a = WeightSequence::kondratiev();
        let (np, nq) = (f.norm_p(p, &a).unwrap(), f.norm_p(p + 1, &a).unwrap());
        prop_assert!(nq <= np * (1.0 + 1e-15));
        prop_assert!((np * np - oracle_norm_sq(&to_map(&f), p)).abs() <= 1e-12 * np * np);
    }

    #[test]
    fn weight_is_multiplicative(u in word_strategy(8), v in word_strategy(8)) {
        let a = WeightSequence::kondratiev();
        let (u, v) = (Word::new(u).unwrap(), Word::new(v).unwrap());
        let uv = u.concat(&v).weight(&a).unwrap();
        let prod = u.weight(&a).unwrap() * v.weight(&a).unwrap();
        prop_assert!((uv - prod).abs() <= 1e-12 * prod);
        prop_assert_eq!(uv, oracle_weight(u.concat(&v).letters()));
    }

    #[test]
    fn monoid_laws(u in word_strategy(5), v in word_strategy(5), w in word_strategy(5)) {
        let (u, v, w) = (Word::new(u).unwrap(), Word::new(v).unwrap(), Word::new(w).unwrap());
        prop_assert_eq!(u.concat(&v).concat(&w), u.concat(&v.concat(&w)));
        prop_assert_eq!(Word::empty().concat(&u), u.clone());
        prop_assert_eq!(u.concat(&Word::empty()), u.clone());
        prop_assert_eq!(u.concat(&v).len(), u.len() + v.len());
    }

    #[test]
    fn prefix_and_quotient(u in word_strategy(5), v in word_strategy(5)) {
        let (u, v) = (Word::new(u).unwrap(), Word::new(v).unwrap());
        let uv = u.concat(&v);
        prop_assert!(u.is_prefix_of(&uv));
        prop_assert_eq!(u.left_quotient(&uv).unwrap(), v.clone());
        prop_assert_eq!(uv.factorizations().len(), uv.len() + 1);
        if !v.is_empty() && !u.is_prefix_of(&v) {
            prop_assert!(u.left_quotient(&v).is_err());
        }
    }

    #[test]
    fn derivations_commute_and_match_oracle(f in series_strategy(MAX_LEN), m in 1u32..=4, n in 1u32..=4) {
        let mn = derivation(m, &derivation(n, &f));
        let nm = derivation(n, &derivation(m, &f));
        prop_assert!(relative_diff(&mn, &nm) <= 1e-12);
        prop_assert!(max_diff(&to_map(&derivation(m, &f)), &oracle_derivation(m, &to_map(&f))) <= 1e-12);
    }

    #[test]
    fn leibniz_rule(f in series_strategy(3), g in series_strategy(3), m in 1u32..=4) {
        let lhs = derivation(m, &f.wick_mul(&g));
        let rhs = derivation(m, &f).wick_mul(&g).add(&f.wick_mul(&derivation(m, &g)));
        prop_assert!(relative_diff(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn inverse_is_two_sided(f in series_strategy(MAX_LEN), re in 0.5f64..3.0, im in -1.0f64..1.0) {
        let f = f.sub(&NcSeries::constant(f.expectation(), trunc()))
            .add(&NcSeries::constant(Complex64::new(re, im), trunc()));
        let inv = wick_inverse(&f).unwrap();
        let one = NcSeries::unit(trunc());
        let fm = to_map(&f);
        let gm = to_map(&inv);
        for prod in [f.wick_mul(&inv), inv.wick_mul(&f)] {
            for (w, v) in to_map(&prod.sub(&one)) {
                let scale = product_scale(&fm, &gm, &w).max(1.0);
                prop_assert!(v.norm() <= 1e-10 * scale);
            }
        }
    }
}

#[test]
fn noncommutativity_witness() {
    let t = trunc();
    let (e1, e2) = (
        NcSeries::basis(Word::letter(1).unwrap(), t),
        NcSeries::basis(Word::letter(2).unwrap(), t),
    );
    assert_ne!(e1.wick_mul(&e2), e2.wick_mul(&e1));
}

#[test]
fn matrix_product_is_associative_and_expectation_multiplicative() {
    let mut gen = SeriesGenerator::new(31, 2, 3);
    for _ in 0..100 {
        let (x, y, z) = (gen.matrix(2, 3), gen.matrix(3, 2), gen.matrix(2, 2));
        let left = x.mat_mul(&y).unwrap().mat_mul(&z).unwrap();
        let right = x.mat_mul(&y.mat_mul(&z).unwrap()).unwrap();
        for (a, b) in left.entries().iter().zip(right.entries()) {
            assert!(relative_diff(a, b) <= 1e-10);
        }
        let exy = expectation_matrix(&x.mat_mul(&y).unwrap());
        let prod = expectation_matrix(&x) * expectation_matrix(&y);
        assert!((exy - prod).norm() <= 1e-12);
    }
    let shape_error = gen.matrix(2, 3).mat_mul(&gen.matrix(2, 3));
    assert!(shape_error.is_err());
}

#[test]
fn identity_matrix_is_neutral() {
    let mut gen = SeriesGenerator::new(32, 3, 2);
    let x = gen.matrix(3, 3);
    let id = AlgebraMatrix::identity(3, gen.trunc());
    assert_eq!(id.mat_mul(&x).unwrap(), x);
    assert_eq!(x.mat_mul(&id).unwrap(), x);
}

#[test]
fn blowup_is_monotone_and_matches_direct_convolution() {
    let values = white_noise_blowup_demo(50);
    assert_eq!(values.len(), 50);
    assert!(values.windows(2).all(|w| w[1] > w[0]));
    // ‖ι(f_N) ⊗ ι(f_N)‖_0 is the ℓ² norm of the truncated self-convolution
    for (n, &v) in values.iter().enumerate() {
        let n = n + 1;
        let f: Vec<f64> = (1..=n)
            .map(|k| 1.0 / ((k as f64).sqrt() * ((k + 1) as f64).ln()))
            .collect();
        let conv_sq: f64 = (2..=2 * n)
            .map(|s| {
                let lo = s.saturating_sub(n).max(1);
                let hi = (s - 1).min(n);
                (lo..=hi).map(|i| f[i - 1] * f[s - i - 1]).sum::<f64>().powi(2)
            })
            .sum();
        assert!((v - conv_sq.sqrt()).abs() <= 1e-12 * v, "N = {n}");
    }
}
