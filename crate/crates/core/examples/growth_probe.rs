//! Denominators of powers of a rational bend matrix.
use packinglab::integrality::denominator_growth_probe;
use packinglab::QMatrix;

fn main() {
    let a = QMatrix::parse(&[&["1/2", "1"], &["0", "2"]]).unwrap();
    let b = QMatrix::parse(&[&["1", "0"], &["1", "1"]]).unwrap();
    let cert = denominator_growth_probe(&[a.clone(), b.clone()], &[1], 10).unwrap();
    println!("A alone: {:?}", cert.verdict);
    let cert = denominator_growth_probe(&[a, b], &[2], 10).unwrap();
    println!("B alone: {:?}", cert.verdict);
}
