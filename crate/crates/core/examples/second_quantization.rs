// Second quantization of a diagonal contraction: eigenvalues on words,
// and ‖Γ(T)‖_HS^2 = 1 / (1 - ‖T‖_HS^2) recovered as a graded sum over the
// free monoid, for the default weights and a custom geometric sequence.
//
// cargo run --example second_quantization

use ncwick::quantization::{
    geometric_tail_bound, graded_geometric_sum, second_quantization_hs_squared,
    second_quantization_image,
};
use ncwick::{hs_norm_embedding, vage_constant, word, EmbeddingSpec, WeightSequence};

fn main() {
    let spec = EmbeddingSpec::kondratiev(2, 0).unwrap();
    let lambda = |n: u32| spec.singular_value(n);
    for w in [word![], word![1], word![1, 2], word![3, 3, 1]] {
        println!("Γ(T) on e_{w}: {:.6}", second_quantization_image(lambda, &w).unwrap());
    }

    let t = hs_norm_embedding(&spec).unwrap().powi(2);
    let exact = second_quantization_hs_squared(t).unwrap();
    for len in [1, 10, 40] {
        let partial = graded_geometric_sum(t, len);
        println!(
            "L = {len:2}: partial {partial:.15}, gap {:.3e} <= tail bound {:.3e}",
            exact - partial,
            geometric_tail_bound(t, len)
        );
    }

    let geometric = WeightSequence::geometric(4.0, 1).unwrap();
    let spec = EmbeddingSpec::new(geometric, 1, 0).unwrap();
    println!(
        "a_n = 4^n: ‖T_(1,0)‖_HS = {:.12}, B_1 = {:.12}",
        hs_norm_embedding(&spec).unwrap(),
        vage_constant(&spec).unwrap()
    );
}
