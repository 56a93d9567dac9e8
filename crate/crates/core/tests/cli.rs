use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncwick-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn series(words: &[(&str, f64)], max_len: usize) -> String {
    let terms: Vec<_> = words
        .iter()
        .map(|(w, re)| format!(r#"{{"word":{w},"re":{re},"im":0.0}}"#))
        .collect();
    format!(r#"{{"trunc":{{"max_len":{max_len}}},"terms":[{}]}}"#, terms.join(","))
}

fn ncwick(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncwick"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn arg(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn mul_of_basis_words_concatenates() {
    let e1 = scratch("mul_e1.json", &series(&[("[1]", 1.0)], 3));
    let e2 = scratch("mul_e2.json", &series(&[("[2]", 1.0)], 3));
    let out = ncwick(&["mul", arg(&e1), arg(&e2)]);
    assert_eq!(out.status.code(), Some(0));
    let f = ncwick::io::series_from_json(&stdout(&out)).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f.coeff(&ncwick::word![1, 2]), ncwick::Complex64::new(1.0, 0.0));

    let out = ncwick(&["mul", arg(&e2), arg(&e1)]);
    let g = ncwick::io::series_from_json(&stdout(&out)).unwrap();
    assert_eq!(g.coeff(&ncwick::word![2, 1]), ncwick::Complex64::new(1.0, 0.0));
}

#[test]
fn mul_by_unit_is_identity() {
    let body = series(&[("[]", 0.5), ("[3,1]", -2.25)], 4);
    let unit = scratch("unit.json", &series(&[("[]", 1.0)], 4));
    let f = scratch("f.json", &body);
    let out = ncwick(&["mul", arg(&unit), arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        ncwick::io::series_from_json(&stdout(&out)).unwrap(),
        ncwick::io::series_from_json(&body).unwrap()
    );
}

#[test]
fn malformed_and_missing_inputs_are_usage_errors() {
    let bad = scratch("bad.json", "{\"terms\": oops");
    assert_eq!(ncwick(&["norm", arg(&bad), "--p", "0"]).status.code(), Some(2));
    let zero_letter = scratch("zero.json", &series(&[("[0]", 1.0)], 2));
    assert_eq!(ncwick(&["norm", arg(&zero_letter), "--p", "0"]).status.code(), Some(2));
    assert_eq!(
        ncwick(&["norm", "/nonexistent/ncwick.json", "--p", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(ncwick(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn norm_values() {
    let unit = scratch("norm_unit.json", &series(&[("[]", 1.0)], 2));
    for p in ["-2", "0", "3"] {
        let out = ncwick(&["norm", arg(&unit), "--p", p]);
        assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 1.0);
    }
    let e12 = scratch("norm_e12.json", &series(&[("[1,2]", 1.0)], 2));
    let out = ncwick(&["norm", arg(&e12), "--p", "1"]);
    assert_eq!(stdout(&out).trim(), "0.35355339059327379");
    let out = ncwick(&["norm", arg(&e12), "--p", "2"]);
    assert_eq!(stdout(&out).trim(), "0.12500000000000000");
}

#[test]
fn vage_check_passes_and_validates() {
    let out = ncwick(&["vage-check", "--p", "0", "--q", "2", "--trials", "1000", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("B_2 = 1.3032521813941"), "{text}");
    assert!(text.contains("violations = 0"));

    assert_eq!(ncwick(&["vage-check", "--p", "1", "--q", "2"]).status.code(), Some(2));
    assert_eq!(
        ncwick(&["vage-check", "--p", "0", "--q", "2", "--trials", "0"]).status.code(),
        Some(0)
    );
}

#[test]
fn vage_const_reports_zeta_and_bound() {
    let out = ncwick(&["vage-const", "--p", "0", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let zeta: f64 = text.lines().next().unwrap().split(" = ").nth(1).unwrap().parse().unwrap();
    assert!((zeta - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    assert_eq!(ncwick(&["vage-const", "--p", "1", "--q", "1"]).status.code(), Some(2));
    // gap 1: ζ(1) diverges, so the embedding is not Hilbert-Schmidt
    assert_eq!(ncwick(&["vage-const", "--p", "0", "--q", "1"]).status.code(), Some(3));
}

#[test]
fn invert_and_dm() {
    let unit = scratch("inv_unit.json", &series(&[("[]", 1.0)], 3));
    let out = ncwick(&["invert", arg(&unit)]);
    assert_eq!(out.status.code(), Some(0));
    let inv = ncwick::io::series_from_json(&stdout(&out)).unwrap();
    assert_eq!(inv, ncwick::io::series_from_json(&series(&[("[]", 1.0)], 3)).unwrap());

    let nilpotent = scratch("inv_e1.json", &series(&[("[1]", 1.0)], 3));
    let out = ncwick(&["invert", arg(&nilpotent)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());

    let e11 = scratch("dm_e11.json", &series(&[("[1,1]", 1.0)], 3));
    let out = ncwick(&["dm", arg(&e11), "--m", "1"]);
    let d = ncwick::io::series_from_json(&stdout(&out)).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d.coeff(&ncwick::word![1]), ncwick::Complex64::new(2.0, 0.0));
}

#[test]
fn apply_checks_the_radius() {
    let f = scratch("apply_f.json", &series(&[("[]", 0.9), ("[1]", 1.0)], 3));
    let phi = scratch("apply_phi.json", r#"{"coeffs":[[1,0],[1,0],[1,0],[1,0]],"radius":1.0}"#);
    assert_eq!(ncwick(&["apply", arg(&f), "--phi", arg(&phi)]).status.code(), Some(3));
    assert_eq!(
        ncwick(&["apply", arg(&f), "--phi", arg(&phi), "--force"]).status.code(),
        Some(0)
    );
}

const ONE_BY_ONE: &str = r#"{"rows":1,"cols":1,"trunc":{"max_len":2},"entries":[[[{"word":[],"re":1.0,"im":0.0}]]]}"#;
const NILPOTENT: &str = r#"{"rows":1,"cols":1,"trunc":{"max_len":2},"entries":[[[{"word":[1],"re":1.0,"im":0.0}]]]}"#;

#[test]
fn observable_on_constant_pair() {
    let pair = scratch("pair.json", &format!(r#"{{"C":{ONE_BY_ONE},"A":{ONE_BY_ONE}}}"#));
    let out = ncwick(&["observable", arg(&pair)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "expectation_observable: true\nkernel_trivial: true\n");

    let pair = scratch("pair_bad.json", &format!(r#"{{"C":{NILPOTENT},"A":{ONE_BY_ONE}}}"#));
    let out = ncwick(&["observable", arg(&pair)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).starts_with("expectation_observable: false"));
}

#[test]
fn realize_and_simulate_agree() {
    let sys = scratch(
        "sys.json",
        &format!(r#"{{"A":{NILPOTENT},"B":{ONE_BY_ONE},"C":{ONE_BY_ONE},"D":{ONE_BY_ONE}}}"#),
    );
    let out = ncwick(&["realize", arg(&sys), "--steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let h = stdout(&out);
    let zero = r#"{"rows":1,"cols":1,"trunc":{"max_len":2},"entries":[[[]]]}"#;
    let sim = scratch(
        "sim.json",
        &format!(r#"{{"h":{},"u":[{ONE_BY_ONE},{zero},{zero},{zero}]}}"#, h.trim()),
    );
    let out = ncwick(&["simulate", arg(&sim), "--steps", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        ncwick::io::matrices_from_json(&stdout(&out)).unwrap(),
        ncwick::io::matrices_from_json(&h).unwrap()
    );
}

#[test]
fn blowup_demo_increases() {
    let out = ncwick(&["blowup-demo", "--steps", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let values: Vec<f64> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 30);
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn output_file_and_determinism() {
    let f = scratch("det_f.json", &series(&[("[]", 2.0), ("[1]", 0.3), ("[2,1]", -0.7)], 4));
    let target = std::env::temp_dir().join(format!("ncwick-cli-{}/det_out.json", std::process::id()));
    let run = || {
        let out = ncwick(&["invert", arg(&f), "--deterministic", "--out", target.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        std::fs::read(&target).unwrap()
    };
    assert_eq!(run(), run());

    let a = stdout(&ncwick(&["vage-check", "--p", "0", "--q", "3", "--trials", "50", "--seed", "9"]));
    let b = stdout(&ncwick(&["vage-check", "--p", "0", "--q", "3", "--trials", "50", "--seed", "9"]));
    assert_eq!(a, b);
}
