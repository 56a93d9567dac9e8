// A two-state system over the algebra: Taylor coefficients of the
// realization D + z C (I - zA)^{-1} B, and the impulse response from the
// convolution y_n = sum h_m ⊗ u_{n-m} reproducing them.
//
// cargo run --example convolution_system

use ncwick::linsys::{simulate, transfer_taylor};
use ncwick::random::SeriesGenerator;
use ncwick::{AlgebraMatrix, SystemDef};

fn main() {
    let mut gen = SeriesGenerator::new(11, 3, 2);
    let sys = SystemDef::new(gen.matrix(2, 2), gen.matrix(2, 1), gen.matrix(1, 2), gen.matrix(1, 1))
        .unwrap();
    let h = transfer_taylor(&sys, 4).unwrap();
    for (k, hk) in h.iter().enumerate() {
        println!("h_{k} = {:?}", hk.get(0, 0));
    }

    let mut impulse = vec![AlgebraMatrix::identity(1, *sys.a.trunc())];
    impulse.extend((0..4).map(|_| AlgebraMatrix::zeros(1, 1, *sys.a.trunc())));
    let y = simulate(&h, &impulse, 5).unwrap();
    assert_eq!(y, h);
    println!("impulse response matches the Taylor coefficients");
    println!(
        "Taylor radius certificate (p = 0): {:.4}",
        sys.taylor_radius_certificate(0).unwrap()
    );
}
