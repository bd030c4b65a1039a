//! An irrational left-nullspace relation rules out integrality.
use packinglab::catalog::get_builtin;
use packinglab::integrality::prove_nonintegral;

fn main() {
    let e = get_builtin("bi17-cluster48").unwrap();
    let cert = prove_nonintegral(e.config.rows()).unwrap();
    println!("{:?}", cert.verdict);
    println!("{}", cert.to_json());
}
