//! Seeded sampling for a point inside every wall of a configuration.
use packinglab::catalog::{get_builtin, sample_box};
use packinglab::orbit::verify_empty_interior;

fn main() {
    for id in ["d3n3", "d3n6"] {
        let e = get_builtin(id).unwrap();
        let rep = verify_empty_interior(&e.config, 5000, 1, sample_box(id)).unwrap();
        println!("{}: {} samples, empty = {}", id, rep.samples, rep.empty);
    }
}
