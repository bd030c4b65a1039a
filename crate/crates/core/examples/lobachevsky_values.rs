//! The Lobachevsky function by series, quadrature and small-angle expansion.
use packinglab::lobachevsky::{lobachevsky, lobachevsky_asymptotic, lobachevsky_quadrature};
use std::f64::consts::PI;

fn main() {
    for k in [1.0, 2.0, 3.0, 4.0, 6.0, 12.0, 60.0] {
        let t = PI / k;
        let a = lobachevsky_asymptotic(t, 12);
        println!(
            "pi/{:<4} series {:.15} quadrature {:.15} small-angle {:.15}{}",
            k,
            lobachevsky(t, 1e-14),
            lobachevsky_quadrature(t, 1e-14),
            a.value,
            if a.within_regime { "" } else { " (outside regime)" }
        );
    }
}
