// The white-noise space is not closed under the Wick product: embedding
// a square-summable sequence on the powers of z_1 and squaring gives
// norms that keep growing with the number of retained terms.
//
// cargo run --example white_noise_blowup

use ncwick::series::white_noise_blowup_demo;

fn main() {
    let values = white_noise_blowup_demo(120);
    for n in [1, 2, 5, 10, 20, 40, 80, 120] {
        println!("N = {n:3}: ‖ι(f_N) ⊗ ι(f_N)‖_0 = {:.6}", values[n - 1]);
    }
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}
