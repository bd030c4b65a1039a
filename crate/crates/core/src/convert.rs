//! Quadratic-form roots to inversive coordinates.
//!
//! A Bianchi root `x` for square-free `m` has form value
//! `f = -2x1x2 + 2x3² + 2m x4²` (`m ≡ 1, 2 mod 4`) or
//! `f = -2x1x2 + 2x3² + 2x3x4 + (m+1)/2 x4²` (`m ≡ 3 mod 4`).
//! The linear map `(x1, x2, x3, x4√m)` (resp. `(x1, x2, x3 + x4/2, x4√m/2)`)
//! sends it to a vector whose inversive norm `b̂b - |bz|²` is `-f/2`, so dividing
//! by `√(f/2)` gives norm −1.
//!
//! A Vinberg vector `x` under `-d x0² + Σ xi²` is divided by `√⟨x,x⟩` and sent to
//! `(x0√d + x1, x0√d - x1, x2, …, xn)`, whose inversive norm is `-⟨x,x⟩`.

use crate::error::{Error, Result};
use crate::exactnum::{square_free_split, QNum};
use crate::geometry::InversiveVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let q = QNum::parse(s)?;
    q.to_rational()
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("{} is not rational", s) })
}

pub fn bianchi_form(m: u64, x: &[BigRational; 4]) -> BigRational {
    let [x1, x2, x3, x4] = x;
    let base = -(rat(2) * x1 * x2) + rat(2) * x3 * x3;
    if m % 4 == 3 {
        base + rat(2) * x3 * x4 + BigRational::new(BigInt::from(m + 1), BigInt::from(2)) * x4 * x4
    } else {
        base + rat(2) * rat(m as i64) * x4 * x4
    }
}

fn normalize(coords: Vec<QNum>, half_norm: &BigRational) -> Result<InversiveVector> {
    let s = QNum::sqrt_rational(half_norm)
        .ok_or_else(|| Error::Unsupported(format!("cannot take an exact square root of {}", half_norm)))?;
    let out = coords
        .iter()
        .map(|c| c.checked_div(&s))
        .collect::<Result<Vec<_>>>()?;
    let v = InversiveVector::new(out)?;
    v.check_normalized()?;
    Ok(v)
}

pub fn from_mcleod_bianchi(m: u64, x: &[BigRational; 4]) -> Result<InversiveVector> {
    if m == 0 || square_free_split(m).0 != 1 {
        return Err(Error::InvalidConfig(format!("m = {} is not square-free", m)));
    }
    let f = bianchi_form(m, x);
    if !f.is_positive() {
        return Err(Error::InvalidConfig(format!("form value {} is not positive", f)));
    }
    let [x1, x2, x3, x4] = x;
    let r = |v: &BigRational| QNum::from_rational(v.clone());
    let sm = QNum::sqrt(m);
    let coords = if m % 4 == 3 {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        vec![r(x1), r(x2), r(&(x3 + x4 * &half)), &sm * &r(&(x4 * &half))]
    } else {
        vec![r(x1), r(x2), r(x3), &sm * &r(x4)]
    };
    normalize(coords, &(f / rat(2)))
}

pub fn vinberg_norm(d: u64, x: &[BigRational]) -> BigRational {
    let mut s = -(rat(d as i64) * &x[0] * &x[0]);
    for xi in &x[1..] {
        s += xi * xi;
    }
    s
}

pub fn from_vinberg_form(d: u64, x: &[BigRational]) -> Result<InversiveVector> {
    if x.len() < 3 {
        return Err(Error::Dimension("Vinberg vector needs at least 3 components".into()));
    }
    if d == 0 {
        return Err(Error::InvalidConfig("d must be positive".into()));
    }
    let nrm = vinberg_norm(d, x);
    if !nrm.is_positive() {
        return Err(Error::InvalidConfig(format!("norm {} is not positive", nrm)));
    }
    let r = |v: &BigRational| QNum::from_rational(v.clone());
    let a = &QNum::sqrt(d) * &r(&x[0]);
    let mut coords = vec![&a + &r(&x[1]), &a - &r(&x[1])];
    coords.extend(x[2..].iter().map(r));
    normalize(coords, &nrm)
}

/// A documented correction to a published root table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Patch {
    pub table: &'static str,
    pub vector: &'static str,
    pub from: Option<[i64; 4]>,
    pub to: Option<[i64; 4]>,
    pub note: &'static str,
}

pub const PATCHES: &[Patch] = &[
    Patch { table: "F.2", vector: "e4", from: Some([1, 0, 0, -1]), to: Some([2, 0, 0, -1]), note: "" },
    Patch { table: "F.3", vector: "e4", from: Some([1, 1, 0, 0]), to: Some([-1, 1, 0, 0]), note: "" },
    Patch { table: "F.9", vector: "e8", from: None, to: None, note: "self-product is 2, not 26" },
    Patch { table: "F.16", vector: "e3", from: Some([0, 0, 1, -2]), to: Some([0, 0, 0, 1]), note: "m = 1 mod 4" },
    Patch { table: "F.16", vector: "e4", from: Some([33, 0, 1, -2]), to: Some([33, 0, 0, 1]), note: "m = 1 mod 4" },
    Patch { table: "F.17", vector: "e4", from: Some([33, 0, -1, 2]), to: Some([39, 0, -1, 2]), note: "" },
    Patch { table: "F.17", vector: "e3", from: None, to: None, note: "self-product is 78, not 66" },
    Patch { table: "F.17", vector: "e4", from: None, to: None, note: "self-product is 78, not 66" },
];

/// One root from an external table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    pub x: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Converted {
    pub name: Option<String>,
    pub vector: InversiveVector,
    pub patched: Option<String>,
}

fn int_vec(x: &[BigRational]) -> Option<Vec<i64>> {
    x.iter()
        .map(|r| {
            if r.is_integer() {
                i64::try_from(r.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Replaces a known misprint; returns the corrected root and a description.
pub fn apply_patches(table: &str, name: &str, x: &[BigRational]) -> (Vec<BigRational>, Option<String>) {
    let Some(iv) = int_vec(x) else {
        return (x.to_vec(), None);
    };
    for p in PATCHES {
        if p.table != table || p.vector != name {
            continue;
        }
        if let (Some(from), Some(to)) = (p.from, p.to) {
            if iv == from {
                let fixed = to.iter().map(|&v| rat(v)).collect();
                return (fixed, Some(format!("{} {}: {:?} -> {:?}", table, name, from, to)));
            }
        }
    }
    (x.to_vec(), None)
}

pub fn convert_record(rec: &RootRecord) -> Result<Converted> {
    let x = rec.x.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    let (x, patched) = match (&rec.table, &rec.name) {
        (Some(t), Some(n)) => apply_patches(t, n, &x),
        _ => (x, None),
    };
    let vector = match (rec.m, rec.d) {
        (Some(m), None) => {
            let arr: [BigRational; 4] = x
                .try_into()
                .map_err(|_| Error::Dimension("Bianchi roots have 4 components".into()))?;
            from_mcleod_bianchi(m, &arr)?
        }
        (None, Some(d)) => from_vinberg_form(d, &x)?,
        _ => return Err(Error::InvalidConfig("each root needs exactly one of m or d".into())),
    };
    Ok(Converted { name: rec.name.clone(), vector, patched })
}

pub fn convert_file(text: &str) -> Result<Vec<Converted>> {
    let recs: Vec<RootRecord> = serde_json::from_str(text)?;
    recs.par_iter().map(convert_record).collect()
}
