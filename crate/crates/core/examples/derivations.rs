// The derivations D_m: letter deletion, the Leibniz rule, and the bound
// ‖D_m f‖_q^2 <= (2m)^p ‖f‖_p^2 for q >= p + 3.
//
// cargo run --example derivations

use ncwick::random::SeriesGenerator;
use ncwick::{derivation, derivation_bound_check, word, NcSeries, TruncationPolicy};

fn main() {
    let trunc = TruncationPolicy::new(4);
    for w in [word![1, 2, 1], word![1, 1], word![2, 3]] {
        println!("D_1 e_{w} = {:?}", derivation(1, &NcSeries::basis(w.clone(), trunc)));
    }

    // factors of length <= 2 inside a length-4 truncation, so f ⊗ g is exact
    let mut gen = SeriesGenerator::new(5, 2, 3);
    let (f, g) = (gen.series().with_trunc(trunc), gen.series().with_trunc(trunc));
    for m in 1..=3 {
        let lhs = derivation(m, &f.wick_mul(&g));
        let rhs = derivation(m, &f).wick_mul(&g).add(&f.wick_mul(&derivation(m, &g)));
        println!("m = {m}: Leibniz defect {:.2e}", lhs.sub(&rhs).max_abs());
        let (d, bound) = derivation_bound_check(m, &f, 0, 3).unwrap();
        println!("       ‖D_m f‖_3^2 = {d:.6} <= {bound:.6}");
    }
}
