// Observability over the algebra: an observable expectation pair stays
// observable under arbitrary higher-order perturbations of C and A, which
// the graded kernel recursion confirms word by word.
//
// cargo run --example observability

use nalgebra::DMatrix;
use ncwick::linsys::{
    is_observable_expectation, kernel_trivial_check, observability_matrix, solve_graded,
};
use ncwick::random::SeriesGenerator;
use ncwick::{AlgebraMatrix, Complex64};

fn main() {
    let mut gen = SeriesGenerator::new(3, 3, 2);
    let trunc = gen.trunc();
    let ec = DMatrix::from_row_slice(1, 2, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let ea = DMatrix::from_row_slice(
        2,
        2,
        &[0.0, 1.0, 0.0, 0.0].map(|x| Complex64::new(x, 0.0)),
    );
    let c = AlgebraMatrix::from_complex(&ec, trunc)
        .add(&gen.matrix_without_constant(1, 2))
        .unwrap();
    let a = AlgebraMatrix::from_complex(&ea, trunc)
        .add(&gen.matrix_without_constant(2, 2))
        .unwrap();

    println!("(E[C], E[A]) observable: {}", is_observable_expectation(&c, &a, 2).unwrap());
    println!("kernel of O is trivial: {}", kernel_trivial_check(&c, &a, 2).unwrap());

    // recover a state from its observations
    let o = observability_matrix(&c, &a, 2).unwrap();
    let f = gen.matrix(2, 1);
    let sol = solve_graded(&o, &o.mat_mul(&f).unwrap()).unwrap();
    let err = (0..2)
        .map(|i| sol.state.get(i, 0).sub(f.get(i, 0)).max_abs())
        .fold(0.0, f64::max);
    println!("{} words solved, max residual {:.2e}, recovery error {err:.2e}", sol.words, sol.max_residual);
}
