//! Bend matrices over a square basis prove a packing integral.
use packinglab::catalog::get_builtin;
use packinglab::integrality::prove_integral;
use packinglab::orbit::split;
use packinglab::SquareConfigBasis;

fn main() {
    let e = get_builtin("bi1").unwrap();
    let (c, co) = split(&e.config, &[e.config.index_of("3").unwrap()]).unwrap();
    let basis = SquareConfigBasis::new(get_builtin("bi1-orbit-basis").unwrap().config.rows().to_vec()).unwrap();
    let cert = prove_integral(&basis, &c, &co).unwrap();
    println!("{}", cert.to_json());
    println!("replays: {}", cert.replay().unwrap());
}
