//! Inversive coordinates `(b̂, b, bz_1..bz_n)` under the form
//! `<v,w> = (b̂_v b_w + b_v b̂_w)/2 - bz_v·bz_w`.

use crate::error::{Error, Result};
use crate::exactnum::{QNum, Sign};
use crate::matrix::QMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InversiveVector {
    coords: Vec<QNum>,
}

impl InversiveVector {
    pub fn new(coords: Vec<QNum>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::Dimension(format!(
                "need at least 3 coordinates, got {}",
                coords.len()
            )));
        }
        Ok(InversiveVector { coords })
    }

    /// Parses `(c1,c2,...)` or a bare comma list of QNum literals.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        let coords = t
            .split(',')
            .map(QNum::parse)
            .collect::<Result<Vec<_>>>()?;
        InversiveVector::new(coords)
    }

    pub fn from_strs(items: &[&str]) -> Result<Self> {
        InversiveVector::new(items.iter().map(|s| QNum::parse(s)).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 2
    }

    pub fn coords(&self) -> &[QNum] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<QNum> {
        self.coords
    }

    pub fn cobend(&self) -> &QNum {
        &self.coords[0]
    }

    pub fn bend(&self) -> &QNum {
        &self.coords[1]
    }

    pub fn bz(&self) -> &[QNum] {
        &self.coords[2..]
    }

    pub fn norm(&self) -> QNum {
        inner(self, self).expect("same dimension")
    }

    pub fn is_normalized(&self) -> bool {
        self.norm() == QNum::from_int(-1)
    }

    pub fn check_normalized(&self) -> Result<()> {
        let n = self.norm();
        if n == QNum::from_int(-1) {
            Ok(())
        } else {
            Err(Error::NotNormalized(n.to_string()))
        }
    }

    pub fn is_hyperplane(&self) -> bool {
        self.bend().is_zero()
    }

    /// Euclidean center `bz/b`; `None` for hyperplanes.
    pub fn center(&self) -> Option<Vec<QNum>> {
        let inv = self.bend().inv().ok()?;
        Some(self.bz().iter().map(|x| x * &inv).collect())
    }

    pub fn scaled(&self, k: &QNum) -> InversiveVector {
        InversiveVector {
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }

    /// Canonical text used as the exact identity key.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl std::ops::Neg for &InversiveVector {
    type Output = InversiveVector;
    fn neg(self) -> InversiveVector {
        InversiveVector {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for InversiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for InversiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn same_dim(v: &InversiveVector, w: &InversiveVector) -> Result<()> {
    if v.coords.len() != w.coords.len() {
        return Err(Error::Dimension(format!(
            "dimensions {} and {}",
            v.dim(),
            w.dim()
        )));
    }
    Ok(())
}

pub fn inner(v: &InversiveVector, w: &InversiveVector) -> Result<QNum> {
    same_dim(v, w)?;
    let half = QNum::from_ratio(1, 2);
    let mut acc = &half * &(&(&v.coords[0] * &w.coords[1]) + &(&v.coords[1] * &w.coords[0]));
    for (a, b) in v.bz().iter().zip(w.bz()) {
        if !a.is_zero() && !b.is_zero() {
            acc -= &(a * b);
        }
    }
    Ok(acc)
}

/// The form matrix Q for dimension n.
pub fn form_matrix(n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n + 2, n + 2);
    m.set(0, 1, QNum::from_ratio(1, 2));
    m.set(1, 0, QNum::from_ratio(1, 2));
    for i in 0..n {
        m.set(i + 2, i + 2, QNum::from_int(-1));
    }
    m
}

pub fn sphere(center: &[QNum], radius: &QNum) -> Result<InversiveVector> {
    if radius.is_zero() {
        return Err(Error::InvalidConfig("zero radius".into()));
    }
    let b = radius.inv()?;
    let bz: Vec<QNum> = center.iter().map(|x| x * &b).collect();
    let zz: QNum = center.iter().map(|x| x * x).sum();
    // b̂ b − |bz|² = −1  ⇒  b̂ = (|z|² − r²)/r
    let cob = &(&zz - &radius.square()) * &b;
    let mut coords = vec![cob, b];
    coords.extend(bz);
    InversiveVector::new(coords)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// interior is `{x : n·x > offset}`
    Positive,
    /// interior is `{x : n·x < offset}`
    Negative,
}

/// The hyperplane `{x : normal·x = offset}`.
pub fn hyperplane(normal: &[QNum], offset: &QNum, side: Side) -> Result<InversiveVector> {
    let nn: QNum = normal.iter().map(|x| x * x).sum();
    if !nn.is_one() {
        return Err(Error::InvalidConfig(format!("normal has squared length {}", nn)));
    }
    let two = QNum::from_int(2);
    let mut coords = vec![&two * offset, QNum::zero()];
    coords.extend(normal.iter().cloned());
    let v = InversiveVector::new(coords)?;
    Ok(match side {
        Side::Positive => v,
        Side::Negative => -&v,
    })
}

pub fn reflection_matrix(m: &InversiveVector) -> Result<QMatrix> {
    m.check_normalized()?;
    let n = m.dim();
    let q = form_matrix(n);
    // 2 Q mᵀ m
    let qm = q.left_apply(m.coords())?;
    let mut r = QMatrix::identity(n + 2);
    for i in 0..n + 2 {
        if qm[i].is_zero() {
            continue;
        }
        for j in 0..n + 2 {
            let t = &QNum::from_int(2) * &(&qm[i] * &m.coords[j]);
            let v = r.get(i, j) + &t;
            r.set(i, j, v);
        }
    }
    Ok(r)
}

/// `v · R_m`, computed as `v + 2<v,m> m`.
pub fn reflect(v: &InversiveVector, m: &InversiveVector) -> Result<InversiveVector> {
    same_dim(v, m)?;
    m.check_normalized()?;
    Ok(reflect_unchecked(v, m))
}

pub(crate) fn reflect_unchecked(v: &InversiveVector, m: &InversiveVector) -> InversiveVector {
    let k = &QNum::from_int(2) * &inner(v, m).expect("same dimension");
    if k.is_zero() {
        return v.clone();
    }
    InversiveVector {
        coords: v
            .coords
            .iter()
            .zip(&m.coords)
            .map(|(a, b)| a + &(&k * b))
            .collect(),
    }
}

pub fn rows_matrix(rows: &[InversiveVector]) -> Result<QMatrix> {
    QMatrix::from_rows(rows.iter().map(|r| r.coords.clone()).collect())
}

/// A square, invertible matrix of inversive-coordinate rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareConfigBasis {
    rows: Vec<InversiveVector>,
    v: QMatrix,
    inv: QMatrix,
}

impl SquareConfigBasis {
    pub fn new(rows: Vec<InversiveVector>) -> Result<Self> {
        let v = rows_matrix(&rows)?;
        if !v.is_square() {
            return Err(Error::Dimension(format!(
                "basis needs {} rows, got {}",
                v.ncols(),
                v.nrows()
            )));
        }
        let inv = v.inverse()?;
        Ok(SquareConfigBasis { rows, v, inv })
    }

    pub fn rows(&self) -> &[InversiveVector] {
        &self.rows
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.v
    }

    pub fn inverse(&self) -> &QMatrix {
        &self.inv
    }

    pub fn dim(&self) -> usize {
        self.v.ncols() - 2
    }

    /// Coordinates of `w` in the row basis (`w = c · V`).
    pub fn coordinates_of(&self, w: &InversiveVector) -> Result<Vec<QNum>> {
        self.inv.left_apply(w.coords())
    }
}

/// `B = V R_m V⁻¹`, so that `B V = V R_m`.
pub fn bend_matrix(basis: &SquareConfigBasis, m: &InversiveVector) -> Result<QMatrix> {
    let r = reflection_matrix(m)?;
    let vr = basis.matrix().checked_mul(&r)?;
    vr.checked_mul(basis.inverse())
}

pub fn gram(rows: &[InversiveVector]) -> Result<QMatrix> {
    let m = rows.len();
    let mut g = QMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let x = inner(&rows[i], &rows[j])?;
            if i != j {
                g.set(j, i, x.clone());
            }
            g.set(i, j, x);
        }
    }
    Ok(g)
}

/// Exact interior membership of the point `x`.
pub fn interior_contains(v: &InversiveVector, x: &[QNum]) -> Result<bool> {
    if x.len() != v.dim() {
        return Err(Error::Dimension("point dimension".into()));
    }
    let b = v.bend();
    if b.is_zero() {
        let dot: QNum = v.bz().iter().zip(x).map(|(a, c)| a * c).sum();
        let val = &dot - &(&QNum::from_ratio(1, 2) * v.cobend());
        return Ok(val.sign() == Sign::Positive);
    }
    // (1/b² − |z − x|²)·sign(b) scaled by b² > 0
    let d: QNum = v
        .bz()
        .iter()
        .zip(x)
        .map(|(bz, xi)| {
            let t = bz - &(b * xi);
            &t * &t
        })
        .sum();
    let val = &QNum::one() - &d;
    let s = val.sign();
    Ok(match b.sign() {
        Sign::Positive => s == Sign::Positive,
        _ => s == Sign::Negative,
    })
}
