//! Quadratic-form roots to normalized inversive coordinates.
use packinglab::convert::convert_file;

const ROOTS: &str = r#"[
  {"table": "F.2", "name": "e4", "m": 2, "x": ["1", "0", "0", "-1"]},
  {"name": "r1", "m": 1, "x": ["0", "0", "1", "0"]},
  {"name": "r2", "m": 7, "x": ["0", "0", "0", "1"]},
  {"name": "v1", "d": 3, "x": ["0", "0", "0", "1"]},
  {"name": "v2", "d": 2, "x": ["1", "2", "0", "0"]}
]"#;

fn main() {
    for c in convert_file(ROOTS).unwrap() {
        println!("{:4} {} {}", c.name.unwrap_or_default(), c.vector, c.patched.unwrap_or_default());
    }
}
