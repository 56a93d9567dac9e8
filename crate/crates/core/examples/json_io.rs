// The JSON formats used by the command line, with bit-exact round trips.
//
// cargo run --example json_io

use ncwick::io::{matrix_from_json, matrix_to_json, series_from_json, series_to_json};
use ncwick::random::SeriesGenerator;

fn main() {
    let mut gen = SeriesGenerator::new(1, 2, 3);
    let f = gen.series();
    let text = series_to_json(&f);
    println!("{text}");
    assert_eq!(series_from_json(&text).unwrap(), f);

    let m = gen.matrix(2, 1);
    let text = matrix_to_json(&m);
    println!("{text}");
    assert_eq!(matrix_from_json(&text).unwrap(), m);
}
