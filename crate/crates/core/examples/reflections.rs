//! Inversive coordinates, the form ⟨·,·⟩ and reflections.
use packinglab::geometry::{hyperplane, inner, reflect, reflection_matrix, sphere, Side};
use packinglab::q;

fn main() {
    let unit = sphere(&[q("0"), q("0")], &q("1")).unwrap();
    let small = sphere(&[q("3/2"), q("0")], &q("1/2")).unwrap();
    let line = hyperplane(&[q("0"), q("1")], &q("1"), Side::Negative).unwrap();
    println!("unit  {}", unit);
    println!("small {}", small);
    println!("line  {}", line);
    println!("<unit,small> = {} (tangent)", inner(&unit, &small).unwrap());
    println!("<unit,line>  = {}", inner(&unit, &line).unwrap());
    let img = reflect(&small, &line).unwrap();
    println!("small reflected in line: {} centre {:?}", img, img.center().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    let r = reflection_matrix(&line).unwrap();
    println!("R^2 = I: {}", r.checked_mul(&r).unwrap() == packinglab::QMatrix::identity(4));
}
