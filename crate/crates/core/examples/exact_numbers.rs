//! Arithmetic and exact sign tests in Q(√2, √3, ...).
use packinglab::{q, QNum};

fn main() {
    let a = q("1/2*sqrt(6)-1/2*sqrt(2)");
    let b = q("sqrt(3)-1");
    println!("a = {}", a);
    println!("a^2 = {}", a.square());
    println!("a*b = {}", &a * &b);
    println!("1/a = {}", a.inv().unwrap());
    // 3√2 − 2√3 + √6 − 5 is about −0.6: decided without floats
    let c = q("3*sqrt(2)-2*sqrt(3)+sqrt(6)-5");
    println!("sign({}) = {:?}", c, c.sign());
    println!("{} parses back: {}", c, QNum::parse(&c.to_string()).unwrap() == c);
}
