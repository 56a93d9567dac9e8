// Wick powers, power series, inverses and the one-point spectrum.
//
// cargo run --example wick_calculus

use ncwick::calculus::in_spectrum;
use ncwick::{
    apply_series, spectrum, wick_inverse, wick_pow, word, Admission, Complex64, NcSeries,
    PowerSeriesSpec, TruncationPolicy,
};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() {
    let trunc = TruncationPolicy::new(5);
    let f = NcSeries::from_terms(
        vec![(word![], c(2.0)), (word![1], c(1.0)), (word![2, 1], c(-0.5))],
        trunc,
        Admission::Strict,
    )
    .unwrap();

    println!("f^3 has {} terms", wick_pow(&f, 3).len());

    let inv = wick_inverse(&f).unwrap();
    let one = f.wick_mul(&inv);
    println!("f ⊗ f^-1 = {one:?}");
    assert!(one.sub(&NcSeries::unit(trunc)).max_abs() < 1e-12);

    let exp = apply_series(&PowerSeriesSpec::exp(30), &NcSeries::basis(word![1], trunc), false)
        .unwrap();
    println!("exp(e_1) = {exp:?}");

    let geometric = PowerSeriesSpec::geometric(10);
    match apply_series(&geometric, &f, false) {
        Ok(_) => println!("1/(1-f) accepted"),
        Err(e) => println!("1/(1-f) rejected: {e}"),
    }

    println!("spectrum(f) = {}", spectrum(&f));
    for lambda in [2.0, 1.9, 2.5] {
        println!("{lambda} in spectrum: {}", in_spectrum(&f, c(lambda)));
    }
}
