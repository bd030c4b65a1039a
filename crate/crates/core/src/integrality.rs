//! Integrality and nonintegrality certificates.

use crate::error::{Error, Result};
use crate::exactnum::{QNum, Sign};
use crate::geometry::{bend_matrix, reflection_matrix, rows_matrix, InversiveVector, SquareConfigBasis};
use crate::groupwords::Configuration;
use crate::matrix::QMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IntegralProven,
    NonintegralProven,
    GrowthEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    BendMatrices {
        basis: QMatrix,
        mirrors: Vec<InversiveVector>,
        matrices: Vec<QMatrix>,
        cluster_coordinates: Vec<Vec<QNum>>,
    },
    Nullspace {
        rows: QMatrix,
        relations: Vec<Vec<QNum>>,
    },
    Growth {
        power: QMatrix,
        /// Largest denominator of `P^k`, `k = 1..=K`, in decimal.
        trace: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralityCertificate {
    pub verdict: Verdict,
    pub lambda: Option<QNum>,
    pub witness: Witness,
}

impl IntegralityCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Re-runs the exact checks behind the verdict.
    pub fn replay(&self) -> Result<bool> {
        match &self.witness {
            Witness::BendMatrices { basis, mirrors, matrices, cluster_coordinates } => {
                if mirrors.len() != matrices.len() {
                    return Ok(false);
                }
                for (m, b) in mirrors.iter().zip(matrices) {
                    let r = reflection_matrix(m)?;
                    if b.checked_mul(basis)? != basis.checked_mul(&r)? {
                        return Ok(false);
                    }
                }
                let integral = matrices.iter().all(|b| b.is_integral())
                    && cluster_coordinates.iter().flatten().all(|x| x.is_integer());
                let bends: Vec<QNum> = (0..basis.nrows()).map(|i| basis.get(i, 1).clone()).collect();
                let lam_ok = find_integral_rescaling(&bends) == self.lambda;
                Ok((self.verdict == Verdict::IntegralProven) == (integral && lam_ok && self.lambda.is_some()))
            }
            Witness::Nullspace { rows, relations } => {
                for g in relations {
                    if !rows.left_apply(g)?.iter().all(|x| x.is_zero()) {
                        return Ok(false);
                    }
                }
                let irrational = relations.iter().flatten().any(|x| !x.is_rational());
                Ok((self.verdict == Verdict::NonintegralProven) == irrational)
            }
            Witness::Growth { power, trace } => {
                let k = trace.len() as u32;
                let t = growth_trace(power, k)?;
                let s: Vec<String> = t.iter().map(|d| d.to_string()).collect();
                Ok(&s == trace && (self.verdict == Verdict::GrowthEvidence) == growth_verdict(&t))
            }
        }
    }
}

/// Dilation by `λ`: `(b̂, b, bz) → (λ b̂, b/λ, bz)`.
pub fn rescale_vector(v: &InversiveVector, lambda: &QNum) -> Result<InversiveVector> {
    if lambda.sign() != Sign::Positive {
        return Err(Error::InvalidConfig(format!("scale factor {} is not positive", lambda)));
    }
    let mut c = v.coords().to_vec();
    c[0] = &c[0] * lambda;
    c[1] = c[1].checked_div(lambda)?;
    InversiveVector::new(c)
}

pub fn rescale(config: &Configuration, lambda: &QNum) -> Result<Configuration> {
    let rows = config
        .rows()
        .iter()
        .map(|r| rescale_vector(r, lambda))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(
        config.name.clone(),
        config.form_d,
        rows,
        config.labels().to_vec(),
        config.words().to_vec(),
    )
}

/// `λ > 0` with every `bend/λ` an integer, when all bends share one radical.
pub fn find_integral_rescaling(bends: &[QNum]) -> Option<QNum> {
    let mut radical: Option<u64> = None;
    let mut den = BigInt::one();
    for b in bends {
        if b.is_zero() {
            continue;
        }
        let (c, k) = b.single_radical()?;
        match radical {
            None => radical = Some(k),
            Some(s) if s != k => return None,
            _ => {}
        }
        den = den.lcm(c.denom());
    }
    let s = radical.unwrap_or(1);
    let inv_den = num_rational::BigRational::new(BigInt::one(), den);
    Some(QNum::sqrt(s).scale(&inv_den))
}

/// Lemma-style integrality proof from a square basis.
pub fn prove_integral(
    basis: &SquareConfigBasis,
    cluster: &[InversiveVector],
    mirrors: &[InversiveVector],
) -> Result<IntegralityCertificate> {
    let matrices = mirrors
        .iter()
        .map(|m| bend_matrix(basis, m))
        .collect::<Result<Vec<_>>>()?;
    let cluster_coordinates = cluster
        .iter()
        .map(|c| basis.coordinates_of(c))
        .collect::<Result<Vec<_>>>()?;
    let bends: Vec<QNum> = basis.rows().iter().map(|r| r.bend().clone()).collect();
    let lambda = find_integral_rescaling(&bends);
    let integral = matrices.iter().all(|b| b.is_integral())
        && cluster_coordinates.iter().flatten().all(|x| x.is_integer());
    let verdict = if integral && lambda.is_some() {
        Verdict::IntegralProven
    } else {
        Verdict::Inconclusive
    };
    Ok(IntegralityCertificate {
        verdict,
        lambda,
        witness: Witness::BendMatrices {
            basis: basis.matrix().clone(),
            mirrors: mirrors.to_vec(),
            matrices,
            cluster_coordinates,
        },
    })
}

/// Nonintegrality from an irrational linear relation among more than `n+2` rows.
pub fn prove_nonintegral(rows: &[InversiveVector]) -> Result<IntegralityCertificate> {
    for r in rows {
        r.check_normalized()?;
    }
    prove_nonintegral_matrix(&rows_matrix(rows)?)
}

/// Same test on an arbitrary tall matrix, without norm checks.
pub fn prove_nonintegral_matrix(v: &QMatrix) -> Result<IntegralityCertificate> {
    let need = v.ncols();
    if v.nrows() <= need {
        return Err(Error::Dimension(format!("need more than {} rows, got {}", need, v.nrows())));
    }
    let rank = v.rank();
    if rank < need {
        return Err(Error::RankDeficient { rank, need });
    }
    let relations = v.left_nullspace();
    let irrational = relations.iter().flatten().any(|x| !x.is_rational());
    Ok(IntegralityCertificate {
        verdict: if irrational { Verdict::NonintegralProven } else { Verdict::Inconclusive },
        lambda: None,
        witness: Witness::Nullspace { rows: v.clone(), relations },
    })
}

pub const DEFAULT_GROWTH_STEPS: u32 = 12;

fn growth_trace(p: &QMatrix, k: u32) -> Result<Vec<BigInt>> {
    let mut acc = p.clone();
    let mut trace = Vec::with_capacity(k as usize);
    for i in 0..k {
        if i > 0 {
            acc = acc.checked_mul(p)?;
        }
        trace.push(acc.denominator());
    }
    Ok(trace)
}

fn growth_verdict(trace: &[BigInt]) -> bool {
    let k = trace.len();
    k >= 2 && (k - k / 2..k).all(|i| trace[i] > trace[i - 1])
}

/// Tracks denominators of the powers of a word's matrix product.
pub fn denominator_growth_probe(
    matrices: &[QMatrix],
    word: &[usize],
    k: u32,
) -> Result<IntegralityCertificate> {
    if k < 2 {
        return Err(Error::InvalidConfig("K must be at least 2".into()));
    }
    let Some(first) = matrices.first() else {
        return Err(Error::InvalidConfig("no matrices".into()));
    };
    let n = first.nrows();
    for m in matrices {
        if !m.is_square() || m.nrows() != n {
            return Err(Error::Dimension("matrices must be square and of equal size".into()));
        }
        if !m.is_rational() {
            return Err(Error::Unsupported("growth probe needs rational matrices".into()));
        }
    }
    let mut p = QMatrix::identity(n);
    for &i in word {
        let m = matrices
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::Index(format!("matrix {} of {}", i, matrices.len())))?;
        p = p.checked_mul(m)?;
    }
    let trace = growth_trace(&p, k)?;
    let verdict = if growth_verdict(&trace) { Verdict::GrowthEvidence } else { Verdict::Inconclusive };
    Ok(IntegralityCertificate {
        verdict,
        lambda: None,
        witness: Witness::Growth { power: p, trace: trace.iter().map(|d| d.to_string()).collect() },
    })
}

/// `V R_w V⁻¹` for a word of 1-based mirror indices, applied left to right.
pub fn word_bend_matrix(basis: &SquareConfigBasis, mirrors: &[InversiveVector], word: &[usize]) -> Result<QMatrix> {
    let mut r = QMatrix::identity(basis.matrix().nrows());
    for &i in word {
        let m = mirrors
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::Index(format!("mirror {} of {}", i, mirrors.len())))?;
        r = r.checked_mul(&reflection_matrix(m)?)?;
    }
    basis.matrix().checked_mul(&r)?.checked_mul(basis.inverse())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundedRationalReport {
    pub bound: String,
    pub words: Vec<Vec<usize>>,
    pub denominators: Vec<String>,
    pub ok: bool,
}

/// Samples mirror words and checks every `B_w` denominator divides the bound.
pub fn check_bounded_rational(
    basis: &SquareConfigBasis,
    mirrors: &[InversiveVector],
    samples: usize,
    word_len: usize,
    seed: u64,
) -> Result<BoundedRationalReport> {
    if mirrors.is_empty() {
        return Err(Error::InvalidConfig("no mirrors".into()));
    }
    for (i, m) in mirrors.iter().enumerate() {
        if !reflection_matrix(m)?.is_integral() {
            return Err(Error::Unsupported(format!("reflection matrix of mirror {} is not integral", i + 1)));
        }
    }
    let singles = mirrors
        .iter()
        .map(|m| bend_matrix(basis, m))
        .collect::<Result<Vec<_>>>()?;
    let bound = if singles.iter().all(|b| b.is_integral()) {
        BigInt::one()
    } else {
        basis.matrix().denominator() * basis.inverse().denominator()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words = Vec::with_capacity(samples);
    let mut denominators = Vec::with_capacity(samples);
    let mut ok = true;
    for _ in 0..samples {
        let w: Vec<usize> = (0..word_len).map(|_| rng.gen_range(1..=mirrors.len())).collect();
        let d = word_bend_matrix(basis, mirrors, &w)?.denominator();
        ok &= bound.is_multiple_of(&d);
        words.push(w);
        denominators.push(d.to_string());
    }
    Ok(BoundedRationalReport { bound: bound.to_string(), words, denominators, ok })
}
