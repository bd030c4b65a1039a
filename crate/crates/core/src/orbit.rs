//! Packings and superpackings by breadth-first reflection.

use crate::error::{Error, Result};
use crate::exactnum::{QNum, Sign};
use crate::geometry::{interior_contains, reflect_unchecked, InversiveVector};
use crate::groupwords::Configuration;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Limits {
    pub max_generation: Option<u32>,
    pub max_bend: Option<QNum>,
    /// Hard stop on the number of circles, independent of the other two.
    pub max_circles: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generation: Some(6),
            max_bend: Some(QNum::from_int(10_000)),
            max_circles: None,
        }
    }
}

impl Limits {
    pub fn generations(g: u32) -> Self {
        Limits { max_generation: Some(g), max_bend: None, max_circles: None }
    }

    fn admits(&self, v: &InversiveVector) -> bool {
        match &self.max_bend {
            Some(m) => (&v.bend().abs() - m).sign() != Sign::Positive,
            None => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Packing,
    Superpacking,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCircle {
    pub vector: InversiveVector,
    pub generation: u32,
    /// Mirror indices (1-based into cluster then cocluster) ending in the seed.
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingOrbit {
    pub circles: Vec<OrbitCircle>,
    pub limits: Limits,
    pub mode: Mode,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl PackingOrbit {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn contains(&self, v: &InversiveVector) -> bool {
        self.index.contains_key(&v.key())
    }

    pub fn get(&self, v: &InversiveVector) -> Option<&OrbitCircle> {
        self.index.get(&v.key()).map(|&i| &self.circles[i])
    }

    pub fn vectors(&self) -> impl Iterator<Item = &InversiveVector> {
        self.circles.iter().map(|c| &c.vector)
    }

    /// `generation <tab> word <tab> (coords)` per circle.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.circles {
            s.push_str(&format!("{}\t{}\t{}\n", c.generation, c.word, c.vector));
        }
        s
    }

    pub fn from_lines(text: &str) -> Result<PackingOrbit> {
        let mut circles = Vec::new();
        let mut index = HashMap::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            if parts.len() != 3 {
                return Err(Error::Parse { pos: ln, msg: "expected 3 tab-separated fields".into() });
            }
            let generation = parts[0]
                .parse()
                .map_err(|_| Error::Parse { pos: ln, msg: "bad generation".into() })?;
            let vector = InversiveVector::parse(parts[2])?;
            index.insert(vector.key(), circles.len());
            circles.push(OrbitCircle { vector, generation, word: parts[1].to_string() });
        }
        Ok(PackingOrbit {
            circles,
            limits: Limits { max_generation: None, max_bend: None, max_circles: None },
            mode: Mode::Packing,
            index,
        })
    }
}

fn check_inputs(cluster: &[InversiveVector], mirrors: &[InversiveVector], limits: &Limits) -> Result<()> {
    if limits.max_generation.is_none() && limits.max_bend.is_none() {
        return Err(Error::NoLimits);
    }
    if cluster.is_empty() {
        return Err(Error::InvalidConfig("empty cluster".into()));
    }
    let n = cluster[0].dim();
    for v in cluster.iter().chain(mirrors) {
        if v.dim() != n {
            return Err(Error::Dimension(format!("{} vs {}", v.dim(), n)));
        }
        v.check_normalized()?;
    }
    Ok(())
}

fn run(
    cluster: &[InversiveVector],
    mirrors: &[(usize, InversiveVector)],
    limits: &Limits,
    mode: Mode,
) -> PackingOrbit {
    let mut circles: Vec<OrbitCircle> = Vec::new();
    let mut index = HashMap::new();
    let mut frontier = Vec::new();
    for (i, c) in cluster.iter().enumerate() {
        let key = c.key();
        if index.contains_key(&key) {
            continue;
        }
        index.insert(key, circles.len());
        frontier.push(circles.len());
        circles.push(OrbitCircle { vector: c.clone(), generation: 0, word: (i + 1).to_string() });
    }
    let cap = limits.max_circles.unwrap_or(usize::MAX);
    let mut generation = 0u32;
    while !frontier.is_empty() && limits.max_generation.is_none_or(|g| generation < g) {
        generation += 1;
        let candidates: Vec<Vec<(InversiveVector, String)>> = frontier
            .par_iter()
            .map(|&ci| {
                let parent = &circles[ci];
                let pkey = parent.vector.key();
                mirrors
                    .iter()
                    .filter(|(_, m)| m.key() != pkey)
                    .filter_map(|(mi, m)| {
                        let w = reflect_unchecked(&parent.vector, m);
                        if w == parent.vector || !limits.admits(&w) {
                            return None;
                        }
                        Some((w, format!("{}.{}", mi, parent.word)))
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        'merge: for batch in candidates {
            for (v, word) in batch {
                if circles.len() >= cap {
                    break 'merge;
                }
                let key = v.key();
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, circles.len());
                next.push(circles.len());
                circles.push(OrbitCircle { vector: v, generation, word });
            }
        }
        frontier = next;
    }
    PackingOrbit { circles, limits: limits.clone(), mode, index }
}

/// Γ·C: the cluster reflected through the cocluster.
pub fn generate_packing(
    cluster: &[InversiveVector],
    cocluster: &[InversiveVector],
    limits: &Limits,
) -> Result<PackingOrbit> {
    check_inputs(cluster, cocluster, limits)?;
    let k = cluster.len();
    let mirrors: Vec<_> = cocluster.iter().enumerate().map(|(i, m)| (k + i + 1, m.clone())).collect();
    Ok(run(cluster, &mirrors, limits, Mode::Packing))
}

/// Γ̃·C: the mirror set also contains the cluster.
pub fn generate_superpacking(
    cluster: &[InversiveVector],
    cocluster: &[InversiveVector],
    limits: &Limits,
) -> Result<PackingOrbit> {
    check_inputs(cluster, cocluster, limits)?;
    let mirrors: Vec<_> = cluster
        .iter()
        .chain(cocluster)
        .enumerate()
        .map(|(i, m)| (i + 1, m.clone()))
        .collect();
    Ok(run(cluster, &mirrors, limits, Mode::Superpacking))
}

/// Splits a configuration into cluster and cocluster rows by 0-based indices.
pub fn split(config: &Configuration, cluster: &[usize]) -> Result<(Vec<InversiveVector>, Vec<InversiveVector>)> {
    if let Some(i) = cluster.iter().find(|&&i| i >= config.len()) {
        return Err(Error::Index(format!("row {} of {}", i + 1, config.len())));
    }
    let c = cluster.iter().map(|&i| config.rows()[i].clone()).collect();
    let co = (0..config.len())
        .filter(|i| !cluster.contains(i))
        .map(|i| config.rows()[i].clone())
        .collect();
    Ok((c, co))
}

pub fn bends(orbit: &PackingOrbit) -> Vec<QNum> {
    orbit.circles.iter().map(|c| c.vector.bend().clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitStats {
    pub total: usize,
    pub per_generation: Vec<usize>,
    pub min_bend: Option<QNum>,
    pub max_bend: Option<QNum>,
}

pub fn orbit_stats(orbit: &PackingOrbit) -> OrbitStats {
    let mut per_generation: Vec<usize> = Vec::new();
    let mut min_bend: Option<QNum> = None;
    let mut max_bend: Option<QNum> = None;
    for c in &orbit.circles {
        let g = c.generation as usize;
        if per_generation.len() <= g {
            per_generation.resize(g + 1, 0);
        }
        per_generation[g] += 1;
        let b = c.vector.bend();
        if min_bend.as_ref().is_none_or(|m| b < m) {
            min_bend = Some(b.clone());
        }
        if max_bend.as_ref().is_none_or(|m| b > m) {
            max_bend = Some(b.clone());
        }
    }
    OrbitStats { total: orbit.circles.len(), per_generation, min_bend, max_bend }
}

/// Axis-aligned sampling box, one `(lo, hi)` per Euclidean coordinate.
pub type SampleBox = Vec<(QNum, QNum)>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmptyInteriorReport {
    pub samples: usize,
    pub seed: u64,
    pub sample_box: SampleBox,
    pub empty: bool,
    pub counterexample: Option<Vec<QNum>>,
}

/// Box around the finite circles of positive bend; `[-1, 1]^n` if there are none.
pub fn default_box(config: &Configuration) -> SampleBox {
    let n = config.dim();
    let mut bx: Option<SampleBox> = None;
    for r in config.rows() {
        if r.bend().sign() != Sign::Positive {
            continue;
        }
        let rad = r.bend().inv().expect("positive bend");
        let c = r.center().expect("finite circle");
        let cur: SampleBox = c.iter().map(|x| (x - &rad, x + &rad)).collect();
        bx = Some(match bx {
            None => cur,
            Some(b) => b
                .into_iter()
                .zip(cur)
                .map(|((l0, h0), (l1, h1))| (l0.min(l1), h0.max(h1)))
                .collect(),
        });
    }
    bx.unwrap_or_else(|| vec![(QNum::from_int(-1), QNum::one()); n])
}

const GRID: i64 = 1 << 20;

/// Samples exact points in `sample_box` and looks for one lying in every interior.
pub fn verify_empty_interior(
    config: &Configuration,
    sample_count: usize,
    seed: u64,
    sample_box: Option<SampleBox>,
) -> Result<EmptyInteriorReport> {
    if sample_count == 0 {
        return Err(Error::InvalidConfig("sample_count must be positive".into()));
    }
    let bx = sample_box.unwrap_or_else(|| default_box(config));
    if bx.len() != config.dim() {
        return Err(Error::Dimension(format!("box has {} axes for dimension {}", bx.len(), config.dim())));
    }
    let widths: Vec<QNum> = bx.iter().map(|(l, h)| h - l).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample_count {
        let x: Vec<QNum> = bx
            .iter()
            .zip(&widths)
            .map(|((lo, _), w)| {
                let t = BigRational::new(BigInt::from(rng.gen_range(0..=GRID)), BigInt::from(GRID));
                lo + &w.scale(&t)
            })
            .collect();
        let mut inside = true;
        for r in config.rows() {
            if !interior_contains(r, &x)? {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(EmptyInteriorReport {
                samples: sample_count,
                seed,
                sample_box: bx,
                empty: false,
                counterexample: Some(x),
            });
        }
    }
    Ok(EmptyInteriorReport { samples: sample_count, seed, sample_box: bx, empty: true, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use crate::geometry::sphere;

    #[test]
    fn limits_required() {
        let c = vec![sphere(&[q("0"), q("0")], &q("1")).unwrap()];
        let l = Limits { max_generation: None, max_bend: None, max_circles: Some(5) };
        assert!(matches!(generate_packing(&c, &[], &l), Err(Error::NoLimits)));
    }

    #[test]
    fn empty_cocluster() {
        let c = vec![sphere(&[q("0"), q("0")], &q("1")).unwrap()];
        let o = generate_packing(&c, &[], &Limits::default()).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(orbit_stats(&o).per_generation, vec![1]);
        let back = PackingOrbit::from_lines(&o.to_lines()).unwrap();
        assert_eq!(back.circles, o.circles);
    }

    #[test]
    fn single_circle_has_interior() {
        let cfg = Configuration::from_rows("one", vec![sphere(&[q("0"), q("0")], &q("1")).unwrap()]).unwrap();
        let r = verify_empty_interior(&cfg, 100, 7, None).unwrap();
        assert!(!r.empty);
    }
}
