//! Coxeter diagrams from Gram matrices, and cluster enumeration.

use crate::error::{Error, Result};
use crate::exactnum::{q, QNum, Sign};
use crate::matrix::QMatrix;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

pub const DEFAULT_MAX_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    Orthogonal,
    /// Entry is `sign` (±1).
    Tangent(i8),
    /// Entry with absolute value above 1, kept exactly.
    Disjoint(QNum),
    /// Dihedral angle π/n.
    Angle(u32),
    /// Only produced by [`diagram_lenient`].
    NonCoxeter(QNum),
}

/// `cos(π/n)` for the orders whose cosine lies in the ring.
pub fn exact_cos_pi_over(n: u32) -> Option<QNum> {
    match n {
        2 => Some(QNum::zero()),
        3 => Some(q("1/2")),
        4 => Some(q("1/2*sqrt(2)")),
        5 => Some(q("1/4+1/4*sqrt(5)")),
        6 => Some(q("1/2*sqrt(3)")),
        12 => Some(q("1/4*sqrt(2)+1/4*sqrt(6)")),
        _ => None,
    }
}

pub fn classify_entry(g: &QNum, max_order: u32) -> Result<EdgeKind> {
    if g.is_zero() {
        return Ok(EdgeKind::Orthogonal);
    }
    let one = QNum::one();
    if *g == one {
        return Ok(EdgeKind::Tangent(1));
    }
    if *g == -&one {
        return Ok(EdgeKind::Tangent(-1));
    }
    if (&g.abs() - &one).sign() == Sign::Positive {
        return Ok(EdgeKind::Disjoint(g.clone()));
    }
    let approx = g.to_f64();
    for n in 3..=max_order {
        match exact_cos_pi_over(n) {
            Some(c) => {
                if *g == c {
                    return Ok(EdgeKind::Angle(n));
                }
            }
            None => {
                let c = (std::f64::consts::PI / n as f64).cos();
                if (approx - c).abs() < 1e-12 {
                    return Err(Error::Ambiguous(format!(
                        "{} is within 1e-12 of cos(pi/{})",
                        g, n
                    )));
                }
            }
        }
    }
    Err(Error::NonCoxeter(format!(
        "{} is not cos(pi/n) for 3 <= n <= {}",
        g, max_order
    )))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoxeterDiagram {
    pub nodes: usize,
    /// Every pair `(i, j)` with `i < j`.
    pub edges: BTreeMap<(usize, usize), EdgeKind>,
}

impl CoxeterDiagram {
    pub fn edge(&self, i: usize, j: usize) -> Option<&EdgeKind> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.get(&key)
    }

    /// Pairs that are drawn (everything except orthogonal).
    pub fn drawn_edges(&self) -> impl Iterator<Item = (&(usize, usize), &EdgeKind)> {
        self.edges.iter().filter(|(_, k)| **k != EdgeKind::Orthogonal)
    }
}

fn check_square(g: &QMatrix) -> Result<()> {
    if !g.is_square() {
        return Err(Error::Dimension("Gram matrix must be square".into()));
    }
    Ok(())
}

pub fn diagram(g: &QMatrix, max_order: u32) -> Result<CoxeterDiagram> {
    check_square(g)?;
    let m = g.nrows();
    let mut edges = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let k = classify_entry(g.get(i, j), max_order).map_err(|e| match e {
                Error::NonCoxeter(s) => Error::NonCoxeter(format!("entry ({},{}): {}", i + 1, j + 1, s)),
                Error::Ambiguous(s) => Error::Ambiguous(format!("entry ({},{}): {}", i + 1, j + 1, s)),
                e => e,
            })?;
            edges.insert((i, j), k);
        }
    }
    Ok(CoxeterDiagram { nodes: m, edges })
}

/// Like [`diagram`] but records unclassifiable entries as `NonCoxeter`.
pub fn diagram_lenient(g: &QMatrix, max_order: u32) -> Result<CoxeterDiagram> {
    check_square(g)?;
    let m = g.nrows();
    let mut edges = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let k = classify_entry(g.get(i, j), max_order)
                .unwrap_or_else(|_| EdgeKind::NonCoxeter(g.get(i, j).clone()));
            edges.insert((i, j), k);
        }
    }
    Ok(CoxeterDiagram { nodes: m, edges })
}

#[derive(Clone, Copy, Debug)]
pub struct ClusterOptions {
    pub exclude_orthogonal_within_cluster: bool,
    pub max_size: Option<usize>,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions { exclude_orthogonal_within_cluster: true, max_size: None }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Rel {
    Zero,
    AtLeastOne,
    Small,
}

fn relation(g: &QNum) -> Rel {
    if g.is_zero() {
        Rel::Zero
    } else if (&g.abs() - &QNum::one()).sign() != Sign::Negative {
        Rel::AtLeastOne
    } else {
        Rel::Small
    }
}

fn relations(g: &QMatrix) -> Vec<Vec<Rel>> {
    let m = g.nrows();
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { Rel::Zero } else { relation(g.get(i, j)) }).collect())
        .collect()
}

/// Every subset `S` (0-based, sorted) meeting the cluster conditions, in
/// lexicographic order.
pub fn enumerate_clusters(g: &QMatrix, opts: ClusterOptions) -> Result<Vec<Vec<usize>>> {
    check_square(g)?;
    let m = g.nrows();
    let max = opts.max_size.unwrap_or(m).min(m);
    let rel = relations(g);
    let eligible: Vec<usize> = (0..m)
        .filter(|&i| (0..m).all(|j| i == j || rel[i][j] != Rel::Small))
        .collect();
    let joinable = |a: usize, b: usize| match rel[a][b] {
        Rel::AtLeastOne => true,
        Rel::Zero => !opts.exclude_orthogonal_within_cluster,
        Rel::Small => false,
    };
    fn extend(
        cur: &mut Vec<usize>,
        rest: &[usize],
        max: usize,
        joinable: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        if cur.len() == max {
            return;
        }
        for (k, &v) in rest.iter().enumerate() {
            if cur.iter().all(|&c| joinable(c, v)) {
                cur.push(v);
                extend(cur, &rest[k + 1..], max, joinable, out);
                cur.pop();
            }
        }
    }
    if max == 0 {
        return Ok(Vec::new());
    }
    let per_start: Vec<Vec<Vec<usize>>> = (0..eligible.len())
        .into_par_iter()
        .map(|k| {
            let mut out = Vec::new();
            let mut cur = vec![eligible[k]];
            extend(&mut cur, &eligible[k + 1..], max, &joinable, &mut out);
            out
        })
        .collect();
    Ok(per_start.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub entry: QNum,
    /// Both ends inside the cluster.
    pub internal: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterReport {
    pub cluster: Vec<usize>,
    pub cocluster: Vec<usize>,
    pub checks: Vec<PairCheck>,
    pub verdict: bool,
}

pub fn validate_cluster(g: &QMatrix, s: &[usize]) -> Result<ClusterReport> {
    check_square(g)?;
    let m = g.nrows();
    if s.is_empty() {
        return Err(Error::InvalidConfig("empty cluster".into()));
    }
    if let Some(bad) = s.iter().find(|&&i| i >= m) {
        return Err(Error::Index(format!("vertex {} of {}", bad + 1, m)));
    }
    let mut cluster = s.to_vec();
    cluster.sort_unstable();
    cluster.dedup();
    let cocluster: Vec<usize> = (0..m).filter(|i| !cluster.contains(i)).collect();
    let mut checks = Vec::new();
    for (a, &i) in cluster.iter().enumerate() {
        for &j in &cluster[a + 1..] {
            let e = g.get(i, j).clone();
            let ok = relation(&e) == Rel::AtLeastOne;
            checks.push(PairCheck { i, j, entry: e, internal: true, ok });
        }
        for &j in &cocluster {
            let e = g.get(i, j).clone();
            let ok = relation(&e) != Rel::Small;
            checks.push(PairCheck { i, j, entry: e, internal: false, ok });
        }
    }
    let verdict = checks.iter().all(|c| c.ok);
    Ok(ClusterReport { cluster, cocluster, checks, verdict })
}

pub fn export_dot(d: &CoxeterDiagram, labels: Option<&[String]>) -> String {
    let mut s = String::from("graph coxeter {\n");
    for i in 0..d.nodes {
        let l = labels
            .and_then(|l| l.get(i).cloned())
            .unwrap_or_else(|| (i + 1).to_string());
        let _ = writeln!(s, "  n{} [label=\"{}\"];", i, l);
    }
    for ((i, j), k) in d.drawn_edges() {
        let attr = match k {
            EdgeKind::Tangent(_) => "style=bold".to_string(),
            EdgeKind::Disjoint(g) => format!("style=dashed, tooltip=\"{}\"", g),
            EdgeKind::Angle(n) => format!("label={}", n),
            EdgeKind::NonCoxeter(g) => format!("style=dotted, label=\"{}\"", g),
            EdgeKind::Orthogonal => unreachable!(),
        };
        let _ = writeln!(s, "  n{} -- n{} [{}];", i, j, attr);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify() {
        assert_eq!(classify_entry(&q("1/2"), 12).unwrap(), EdgeKind::Angle(3));
        assert_eq!(classify_entry(&q("1/2*sqrt(3)"), 12).unwrap(), EdgeKind::Angle(6));
        assert_eq!(classify_entry(&q("2"), 12).unwrap(), EdgeKind::Disjoint(q("2")));
        assert_eq!(classify_entry(&q("-1"), 12).unwrap(), EdgeKind::Tangent(-1));
        assert_eq!(classify_entry(&q("0"), 12).unwrap(), EdgeKind::Orthogonal);
        assert!(matches!(classify_entry(&q("-1/2"), 12), Err(Error::NonCoxeter(_))));
        assert!(matches!(classify_entry(&q("1/3"), 12), Err(Error::NonCoxeter(_))));
        // cos(pi/5) is representable but outside a max_order of 4
        assert!(classify_entry(&q("1/4+1/4*sqrt(5)"), 4).is_err());
        assert_eq!(classify_entry(&q("1/4+1/4*sqrt(5)"), 12).unwrap(), EdgeKind::Angle(5));
    }

    #[test]
    fn export_empty() {
        let d = diagram(&QMatrix::parse(&[&["-1"]]).unwrap(), 12).unwrap();
        assert_eq!(export_dot(&d, None), "graph coxeter {\n  n0 [label=\"1\"];\n}\n");
    }

    #[test]
    fn clusters_small() {
        let g = QMatrix::parse(&[
            &["-1", "1", "0", "1/2"],
            &["1", "-1", "3", "0"],
            &["0", "3", "-1", "0"],
            &["1/2", "0", "0", "-1"],
        ])
        .unwrap();
        let c = enumerate_clusters(&g, ClusterOptions::default()).unwrap();
        assert_eq!(c, vec![vec![1], vec![1, 2], vec![2]]);
        let loose = ClusterOptions { exclude_orthogonal_within_cluster: false, max_size: None };
        assert_eq!(enumerate_clusters(&g, loose).unwrap(), vec![vec![1], vec![1, 2], vec![2]]);
        let r = validate_cluster(&g, &[0]).unwrap();
        assert!(!r.verdict);
        assert!(validate_cluster(&g, &[1, 2]).unwrap().verdict);
    }
}
