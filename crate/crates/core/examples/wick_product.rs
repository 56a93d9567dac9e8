// Basis words concatenate under the Wick product, which is associative and
// unital but not commutative. Graded norms damp long words.
//
// cargo run --example wick_product

use ncwick::{word, Admission, Complex64, NcSeries, TruncationPolicy, WeightSequence};

fn main() {
    let trunc = TruncationPolicy::new(4);
    let e1 = NcSeries::basis(word![1], trunc);
    let e2 = NcSeries::basis(word![2], trunc);
    println!("e_1 ⊗ e_2 = {:?}", e1.wick_mul(&e2));
    println!("e_2 ⊗ e_1 = {:?}", e2.wick_mul(&e1));

    let f = NcSeries::from_terms(
        vec![
            (word![], Complex64::new(1.0, 0.0)),
            (word![1], Complex64::new(1.0, 0.0)),
        ],
        trunc,
        Admission::Strict,
    )
    .expect("words fit the truncation");
    let square = f.wick_mul(&f);
    println!("(1 + e_1)^2 = {square:?}");
    assert_eq!(square.coeff(&word![1]), Complex64::new(2.0, 0.0));

    // E is multiplicative
    let g = NcSeries::from_terms(
        vec![
            (word![], Complex64::new(3.0, -1.0)),
            (word![2, 1], Complex64::new(0.5, 0.0)),
        ],
        trunc,
        Admission::Strict,
    )
    .unwrap();
    println!(
        "E[f ⊗ g] = {}, E[f] E[g] = {}",
        f.wick_mul(&g).expectation(),
        f.expectation() * g.expectation()
    );

    let a = WeightSequence::kondratiev();
    let e12 = NcSeries::basis(word![1, 2], trunc);
    for p in 0..=3 {
        println!("‖e_12‖_{p} = {:.6}", e12.norm_p(p, &a).unwrap());
    }
}
