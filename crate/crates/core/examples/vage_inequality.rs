// The Våge constants B_{q-p} and a seeded audit of
// ‖f ⊗ g‖_q <= B_{q-p} ‖f‖_p ‖g‖_q on random truncated series.
//
// cargo run --example vage_inequality

use ncwick::cli::vage_audit;
use ncwick::quantization::{kondratiev_vage_constant, monoid_weight_sum};
use ncwick::{zeta, WeightSequence};

fn main() {
    let z2 = zeta(2.0).unwrap();
    println!("zeta(2) = {z2:.15}, pi^2/6 = {:.15}", std::f64::consts::PI.powi(2) / 6.0);
    for gap in 2..=5 {
        println!("B_{gap} = {:.12}", kondratiev_vage_constant(gap).unwrap());
    }
    let b2 = kondratiev_vage_constant(2).unwrap();
    let a = WeightSequence::kondratiev();
    for len in [0, 1, 5, 20, 40] {
        println!(
            "sum over words of length <= {len:2}: {:.15} (B_2^2 = {:.15})",
            monoid_weight_sum(&a, 2, len).unwrap(),
            b2 * b2
        );
    }

    for (p, q) in [(0, 2), (0, 3), (1, 3)] {
        let report = vage_audit(p, q, 200, 42, 6, 8).unwrap();
        println!(
            "p={p} q={q}: max ratios {:.4} / {:.4} against B = {:.4}, {} violations",
            report.max_ratio_fg, report.max_ratio_gf, report.bound, report.violations
        );
        assert_eq!(report.violations, 0);
    }
}
