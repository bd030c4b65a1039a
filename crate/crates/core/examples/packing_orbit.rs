//! Breadth-first orbit of a cluster under its cocluster mirrors.
use packinglab::catalog::get_builtin;
use packinglab::orbit::{generate_packing, orbit_stats, split, Limits};

fn main() {
    let e = get_builtin("bi1").unwrap();
    let (c, co) = split(&e.config, &[e.config.index_of("3").unwrap()]).unwrap();
    let orbit = generate_packing(&c, &co, &Limits::generations(9)).unwrap();
    print!("{}", orbit.to_lines());
    let s = orbit_stats(&orbit);
    println!("{} circles, per generation {:?}", s.total, s.per_generation);
}
