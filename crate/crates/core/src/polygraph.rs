//! Polyhedra as oriented planar graphs, glued along faces or vertices.

use crate::error::{Error, Result};
use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Faces are vertex cycles, counterclockwise seen from outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarPolyhedron {
    pub name: String,
    labels: Vec<String>,
    faces: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    name: String,
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<[String; 2]>>,
    faces: Vec<Vec<String>>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl PlanarPolyhedron {
    pub fn new(name: impl Into<String>, labels: Vec<String>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let v = labels.len();
        let mut directed = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(Error::InvalidPolyhedron(format!("face {} has {} vertices", fi, f.len())));
            }
            if f.iter().collect::<BTreeSet<_>>().len() != f.len() {
                return Err(Error::InvalidPolyhedron(format!("face {} repeats a vertex", fi)));
            }
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                if a >= v || b >= v {
                    return Err(Error::InvalidPolyhedron(format!("face {} uses unknown vertex", fi)));
                }
                if directed.insert((a, b), fi).is_some() {
                    return Err(Error::InvalidPolyhedron(format!(
                        "directed edge {}->{} used twice (faces not consistently oriented)",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                return Err(Error::InvalidPolyhedron(format!(
                    "edge {}-{} lies on only one face",
                    labels[a], labels[b]
                )));
            }
        }
        let edges: BTreeSet<_> = directed.keys().map(|&(a, b)| edge_key(a, b)).collect();
        let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
        if used.len() != v {
            return Err(Error::InvalidPolyhedron("isolated vertex".into()));
        }
        let p = PlanarPolyhedron { name: name.into(), labels, faces, edges };
        let (vv, e, f) = p.counts();
        if vv as i64 - e as i64 + f as i64 != 2 {
            return Err(Error::InvalidPolyhedron(format!("Euler characteristic {} != 2", vv as i64 - e as i64 + f as i64)));
        }
        Ok(p)
    }

    /// Builds from label strings; faces given as label cycles.
    pub fn from_labelled(name: &str, labels: &[&str], faces: &[&[&str]]) -> Result<Self> {
        let idx: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let faces = faces
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| idx.get(l).copied().ok_or_else(|| Error::InvalidPolyhedron(format!("unknown vertex {}", l))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PlanarPolyhedron::new(name, labels.iter().map(|s| s.to_string()).collect(), faces)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pf: PolyFile = serde_json::from_str(text)?;
        let idx: HashMap<&str, usize> = pf.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &str| idx.get(l).copied().ok_or_else(|| Error::InvalidPolyhedron(format!("unknown vertex {}", l)));
        let faces = pf
            .faces
            .iter()
            .map(|f| f.iter().map(|l| look(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let p = PlanarPolyhedron::new(pf.name.clone(), pf.labels.clone(), faces)?;
        if let Some(es) = &pf.edges {
            let given = es
                .iter()
                .map(|[a, b]| Ok(edge_key(look(a)?, look(b)?)))
                .collect::<Result<BTreeSet<_>>>()?;
            if given != p.edges {
                return Err(Error::InvalidPolyhedron("edge list disagrees with faces".into()));
            }
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        let pf = PolyFile {
            name: self.name.clone(),
            labels: self.labels.clone(),
            edges: Some(
                self.edges
                    .iter()
                    .map(|&(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                    .collect(),
            ),
            faces: self
                .faces
                .iter()
                .map(|f| f.iter().map(|&i| self.labels[i].clone()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&pf).expect("polyhedron serializes")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// (V, E, F)
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.labels.len(), self.edges.len(), self.faces.len())
    }

    /// Number of faces of each size.
    pub fn face_types(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Same polyhedron seen in a mirror.
    pub fn reversed(&self) -> PlanarPolyhedron {
        let mut p = self.clone();
        for f in &mut p.faces {
            f.reverse();
        }
        p
    }

    fn face_with_directed(&self, a: usize, b: usize) -> Option<usize> {
        self.faces.iter().position(|f| {
            (0..f.len()).any(|k| f[k] == a && f[(k + 1) % f.len()] == b)
        })
    }

    /// Neighbours of `v` in rotation order, and the face between consecutive ones:
    /// face `i` reads `v, u[i+1], …, u[i]`.
    pub fn rotation(&self, v: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if v >= self.labels.len() {
            return Err(Error::Index(format!("vertex {}", v)));
        }
        let start = self
            .faces
            .iter()
            .position(|f| f.contains(&v))
            .ok_or_else(|| Error::InvalidPolyhedron("vertex on no face".into()))?;
        let (mut us, mut fs) = (Vec::new(), Vec::new());
        let mut f = start;
        loop {
            let face = &self.faces[f];
            let k = face.iter().position(|&x| x == v).expect("vertex on face");
            let prev = face[(k + face.len() - 1) % face.len()];
            let next = face[(k + 1) % face.len()];
            us.push(prev);
            fs.push(f);
            f = self.face_with_directed(next, v).expect("closed surface");
            if f == start {
                break;
            }
            if fs.len() > self.faces.len() {
                return Err(Error::InvalidPolyhedron("vertex link is not a cycle".into()));
            }
        }
        Ok((us, fs))
    }

    pub fn graph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<_> = (0..self.labels.len()).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }

    fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.labels.len();
        let Some(s) = (0..n).find(|v| !removed.contains(v)) else {
            return true;
        };
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(a, b) in &self.edges {
                let y = if a == x { b } else if b == x { a } else { continue };
                if !seen[y] && !removed.contains(&y) {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n - removed.len()
    }

    /// Brute force; `None` above 16 vertices.
    pub fn is_three_connected(&self) -> Option<bool> {
        let n = self.labels.len();
        if n > 16 {
            return None;
        }
        if n < 4 {
            return Some(false);
        }
        for a in 0..n {
            for b in a + 1..n {
                if !self.connected_without(&[a, b]) {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}

pub fn isomorphic(a: &PlanarPolyhedron, b: &PlanarPolyhedron) -> bool {
    petgraph::algo::is_isomorphic(&a.graph(), &b.graph())
}

fn cyclic_direction(targets: &[usize], cycle: &[usize]) -> Option<bool> {
    // true: same direction as `cycle`; false: opposite
    let n = cycle.len();
    if targets.len() != n {
        return None;
    }
    let pos: Vec<usize> = targets
        .iter()
        .map(|t| cycle.iter().position(|c| c == t))
        .collect::<Option<_>>()?;
    if pos.iter().collect::<BTreeSet<_>>().len() != n {
        return None;
    }
    if (0..n).all(|i| pos[(i + 1) % n] == (pos[i] + 1) % n) {
        Some(true)
    } else if (0..n).all(|i| (pos[(i + 1) % n] + 1) % n == pos[i]) {
        Some(false)
    } else {
        None
    }
}

fn candidate_matchings(cycle: &[usize]) -> Vec<Vec<usize>> {
    let n = cycle.len();
    let mut out = Vec::new();
    for r in 0..n {
        out.push((0..n).map(|i| cycle[(r + n - i) % n]).collect());
    }
    for r in 0..n {
        out.push((0..n).map(|i| cycle[(r + i) % n]).collect());
    }
    out
}

fn other_face_size(p: &PlanarPolyhedron, a: usize, b: usize, not: usize) -> usize {
    p.faces
        .iter()
        .enumerate()
        .find(|(i, f)| *i != not && f.contains(&a) && f.contains(&b) && {
            let n = f.len();
            (0..n).any(|k| edge_key(f[k], f[(k + 1) % n]) == edge_key(a, b))
        })
        .map(|(_, f)| f.len())
        .unwrap_or(0)
}

/// A cyclic map from face `fa`'s vertices onto face `fb`'s vertices under which
/// the faces across corresponding edges have equal sizes. The result lists the
/// `B` vertex paired with each vertex of `fa` in order.
pub fn face_equivalent(
    a: &PlanarPolyhedron,
    fa: usize,
    b: &PlanarPolyhedron,
    fb: usize,
) -> Result<Option<Vec<usize>>> {
    let (ca, cb) = face_pair(a, fa, b, fb)?;
    let n = ca.len();
    let sa: Vec<usize> = (0..n).map(|i| other_face_size(a, ca[i], ca[(i + 1) % n], fa)).collect();
    for m in candidate_matchings(cb) {
        if (0..n).all(|i| other_face_size(b, m[i], m[(i + 1) % n], fb) == sa[i]) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn face_pair<'a>(
    a: &'a PlanarPolyhedron,
    fa: usize,
    b: &'a PlanarPolyhedron,
    fb: usize,
) -> Result<(&'a [usize], &'a [usize])> {
    let ca = a.faces.get(fa).ok_or_else(|| Error::Index(format!("face {} of A", fa)))?;
    let cb = b.faces.get(fb).ok_or_else(|| Error::Index(format!("face {} of B", fb)))?;
    if ca.len() != cb.len() {
        return Err(Error::InvalidMatching(format!("face sizes {} and {}", ca.len(), cb.len())));
    }
    Ok((ca, cb))
}

/// Pairs the rotation at `va` with neighbours of `vb` so that the faces around
/// both vertices have the same sizes in the same order. Lists the `B` neighbour
/// paired with each entry of `A`'s rotation.
pub fn vertex_equivalent(
    a: &PlanarPolyhedron,
    va: usize,
    b: &PlanarPolyhedron,
    vb: usize,
) -> Result<Option<Vec<usize>>> {
    let (ua, fa) = a.rotation(va)?;
    let (ub, _) = b.rotation(vb)?;
    if ua.len() != ub.len() {
        return Err(Error::InvalidMatching(format!("degrees {} and {}", ua.len(), ub.len())));
    }
    let n = ua.len();
    let sa: Vec<usize> = fa.iter().map(|&f| a.faces[f].len()).collect();
    for m in candidate_matchings(&ub) {
        let ok = (0..n).all(|i| {
            // face of B spanned by the images of u[i] and u[i+1]
            b.faces
                .iter()
                .find(|f| f.contains(&vb) && f.contains(&m[i]) && f.contains(&m[(i + 1) % n]) && {
                    let k = f.iter().position(|&x| x == vb).unwrap();
                    let p = f[(k + f.len() - 1) % f.len()];
                    let q = f[(k + 1) % f.len()];
                    (p == m[i] && q == m[(i + 1) % n]) || (q == m[i] && p == m[(i + 1) % n])
                })
                .is_some_and(|f| f.len() == sa[i])
        });
        if ok {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

struct Merger {
    labels: Vec<String>,
    b_map: Vec<Option<usize>>,
}

impl Merger {
    fn start(a: &PlanarPolyhedron, b: &PlanarPolyhedron) -> Self {
        Merger { labels: a.labels.clone(), b_map: vec![None; b.labels.len()] }
    }

    fn add_b(&mut self, b: &PlanarPolyhedron, v: usize) -> usize {
        if let Some(i) = self.b_map[v] {
            return i;
        }
        let mut l = format!("B.{}", b.labels[v]);
        while self.labels.contains(&l) {
            l.push('\'');
        }
        self.labels.push(l);
        let i = self.labels.len() - 1;
        self.b_map[v] = Some(i);
        i
    }
}

/// Identifies face `fa` of `a` with face `fb` of `b`; both faces disappear.
pub fn glue_face(
    a: &PlanarPolyhedron,
    fa: usize,
    b: &PlanarPolyhedron,
    fb: usize,
    matching: &[usize],
) -> Result<PlanarPolyhedron> {
    let (_, cb) = face_pair(a, fa, b, fb)?;
    let same = cyclic_direction(matching, cb)
        .ok_or_else(|| Error::InvalidMatching("not a cyclic correspondence onto the face".into()))?;
    let b = if same { b.reversed() } else { b.clone() };
    let ca = &a.faces[fa];
    let mut mg = Merger::start(a, &b);
    for (i, &w) in matching.iter().enumerate() {
        mg.b_map[w] = Some(ca[i]);
    }
    let mut faces: Vec<Vec<usize>> = a.faces.iter().enumerate().filter(|(i, _)| *i != fa).map(|(_, f)| f.clone()).collect();
    for (i, f) in b.faces.iter().enumerate() {
        if i == fb {
            continue;
        }
        faces.push(f.iter().map(|&v| mg.add_b(&b, v)).collect());
    }
    PlanarPolyhedron::new(format!("{}+F{}", a.name, b.name), mg.labels, faces)
}

/// Removes `va` and `vb`, joins their neighbourhoods edge to edge, and merges the
/// faces around them pairwise. `matching` pairs each entry of `a.rotation(va)` with
/// a neighbour of `vb`.
pub fn glue_vertex(
    a: &PlanarPolyhedron,
    va: usize,
    b: &PlanarPolyhedron,
    vb: usize,
    matching: &[usize],
) -> Result<PlanarPolyhedron> {
    let (ua, fa) = a.rotation(va)?;
    let (ub, _) = b.rotation(vb)?;
    if ua.len() != ub.len() {
        return Err(Error::InvalidMatching(format!("degrees {} and {}", ua.len(), ub.len())));
    }
    let same = cyclic_direction(matching, &ub)
        .ok_or_else(|| Error::InvalidMatching("not a cyclic correspondence of neighbours".into()))?;
    let b = if same { b.reversed() } else { b.clone() };
    let n = ua.len();
    // relabel A without va
    let a_map: Vec<Option<usize>> = {
        let mut k = 0;
        (0..a.labels.len())
            .map(|v| {
                if v == va {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect()
    };
    let labels: Vec<String> = a.labels.iter().enumerate().filter(|(i, _)| *i != va).map(|(_, l)| l.clone()).collect();
    let mut mg = Merger { labels, b_map: vec![None; b.labels.len()] };
    let am = |v: usize| a_map[v].expect("not va");
    let mut faces = Vec::new();
    for (i, f) in a.faces.iter().enumerate() {
        if !fa.contains(&i) {
            faces.push(f.iter().map(|&v| am(v)).collect());
        }
    }
    let b_faces_at: Vec<usize> = (0..b.faces.len()).filter(|&i| b.faces[i].contains(&vb)).collect();
    for (i, f) in b.faces.iter().enumerate() {
        if !b_faces_at.contains(&i) {
            let mapped: Vec<usize> = f.iter().map(|&v| mg.add_b(&b, v)).collect();
            faces.push(mapped);
        }
    }
    // path of a face after removing its special vertex, starting just after it
    let path = |f: &[usize], v: usize| -> Vec<usize> {
        let k = f.iter().position(|&x| x == v).expect("vertex on face");
        (1..f.len()).map(|t| f[(k + t) % f.len()]).collect()
    };
    for i in 0..n {
        // A face i reads va, u[i+1], …, u[i]
        let pa = path(&a.faces[fa[i]], va);
        let (w_i, w_next) = (matching[i], matching[(i + 1) % n]);
        let gb = b_faces_at
            .iter()
            .copied()
            .find(|&g| {
                let p = path(&b.faces[g], vb);
                p.first() == Some(&w_i) && p.last() == Some(&w_next)
            })
            .ok_or_else(|| Error::InvalidMatching("matching does not respect the rotation".into()))?;
        let pb = path(&b.faces[gb], vb);
        let mut face: Vec<usize> = pa.iter().map(|&v| am(v)).collect();
        face.extend(pb.iter().map(|&v| mg.add_b(&b, v)));
        faces.push(face);
    }
    PlanarPolyhedron::new(format!("{}+V{}", a.name, b.name), mg.labels, faces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlueKind {
    Face,
    Vertex,
}

pub fn count_after_glue(
    kind: GlueKind,
    a: (usize, usize, usize),
    b: (usize, usize, usize),
    n: usize,
) -> (usize, usize, usize) {
    match kind {
        GlueKind::Face => (a.0 + b.0 - n, a.1 + b.1 - n, a.2 + b.2 - 2),
        GlueKind::Vertex => (a.0 + b.0 - 2, a.1 + b.1 - n, a.2 + b.2 - n),
    }
}

pub fn pyramid(n: usize) -> PlanarPolyhedron {
    let mut labels = vec!["apex".to_string()];
    labels.extend((1..=n).map(|i| format!("b{}", i)));
    let mut faces: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1, 0]).collect();
    faces.push((1..=n).rev().collect());
    PlanarPolyhedron::new(format!("pyramid{}", n), labels, faces).expect("pyramid is valid")
}

pub fn tetrahedron() -> PlanarPolyhedron {
    let mut p = pyramid(3);
    p.name = "tetrahedron".into();
    p
}

pub fn square_pyramid() -> PlanarPolyhedron {
    let mut p = pyramid(4);
    p.name = "square-pyramid".into();
    p
}

pub fn hexagonal_pyramid() -> PlanarPolyhedron {
    let mut p = pyramid(6);
    p.name = "hexagonal-pyramid".into();
    p
}

/// Six vertices, seven faces: a hexagonal bipyramid cut in half through its axis.
pub fn six_v_seven_f_2() -> PlanarPolyhedron {
    PlanarPolyhedron::from_labelled(
        "6v7f_2",
        &["N", "S", "e0", "e1", "e2", "e3"],
        &[
            &["N", "e0", "e1"],
            &["N", "e1", "e2"],
            &["N", "e2", "e3"],
            &["S", "e1", "e0"],
            &["S", "e2", "e1"],
            &["S", "e3", "e2"],
            &["N", "e3", "S", "e0"],
        ],
    )
    .expect("fixture is valid")
}

pub fn fixture(name: &str) -> Option<PlanarPolyhedron> {
    match name {
        "tetrahedron" | "t" => Some(tetrahedron()),
        "square-pyramid" | "s" => Some(square_pyramid()),
        "hexagonal-pyramid" | "h" => Some(hexagonal_pyramid()),
        "6v7f_2" => Some(six_v_seven_f_2()),
        _ => None,
    }
}

pub const FIXTURES: &[&str] = &["tetrahedron", "square-pyramid", "hexagonal-pyramid", "6v7f_2"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_valid() {
        assert_eq!(tetrahedron().counts(), (4, 6, 4));
        assert_eq!(square_pyramid().counts(), (5, 8, 5));
        assert_eq!(hexagonal_pyramid().counts(), (7, 12, 7));
        assert_eq!(six_v_seven_f_2().counts(), (6, 11, 7));
        for f in FIXTURES {
            assert_eq!(fixture(f).unwrap().is_three_connected(), Some(true), "{}", f);
        }
    }

    #[test]
    fn rotation_tet() {
        let t = tetrahedron();
        let (us, fs) = t.rotation(0).unwrap();
        assert_eq!(us.len(), 3);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn bad_orientation() {
        let r = PlanarPolyhedron::from_labelled("x", &["a", "b", "c"], &[&["a", "b", "c"], &["a", "b", "c"]]);
        assert!(r.is_err());
    }

    #[test]
    fn json_roundtrip() {
        let s = square_pyramid();
        assert_eq!(PlanarPolyhedron::from_json(&s.to_json()).unwrap(), s);
    }
}
