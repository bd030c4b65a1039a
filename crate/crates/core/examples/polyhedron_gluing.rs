//! Face and vertex gluing of small polyhedra.
use packinglab::polygraph::*;

fn main() {
    let t = tetrahedron();
    let s = square_pyramid();
    let m = face_equivalent(&t, 0, &t, 0).unwrap().unwrap();
    let bip = glue_face(&t, 0, &t, 0, &m).unwrap();
    println!("t F t   {:?} {:?}", bip.counts(), bip.face_types());
    let m = vertex_equivalent(&t, 0, &t, 0).unwrap().unwrap();
    let prism = glue_vertex(&t, 0, &t, 0, &m).unwrap();
    println!("t V t   {:?} {:?}", prism.counts(), prism.face_types());
    let sq = s.faces().iter().position(|f| f.len() == 4).unwrap();
    let m = face_equivalent(&s, sq, &s, sq).unwrap().unwrap();
    let oct = glue_face(&s, sq, &s, sq, &m).unwrap();
    println!("s F4 s  {:?} {:?}", oct.counts(), oct.face_types());
    let tri = s.faces().iter().position(|f| f.len() == 3).unwrap();
    println!("s/t triangle match: {:?}", face_equivalent(&s, tri, &t, 0).unwrap());
    println!("{}", oct.to_json());
}
