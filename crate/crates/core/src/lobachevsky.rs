//! The Lobachevsky function `L(θ) = -∫₀^θ log|2 sin u| du` in double precision.

use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Asymptotic,
    Quadrature,
}

/// Representative of θ in `[0, π)`.
pub fn reduce(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Terms needed so the tail of `½ Σ sin(2nθ)/n²` stays below `tol`.
pub fn series_terms(theta: f64, tol: f64) -> u64 {
    let crude = (1.0 / (2.0 * tol)).ceil();
    let s = theta.sin().abs();
    // Abel summation: partial sums of sin(2nθ) are bounded by 1/|sin θ|
    let abel = if s > 0.0 { (1.0 / (s * tol)).sqrt().ceil() } else { f64::INFINITY };
    crude.min(abel).max(1.0) as u64
}

/// `½ Σ_{n≥1} sin(2nθ)/n²`, truncated per [`series_terms`].
pub fn lobachevsky(theta: f64, tol: f64) -> f64 {
    assert!(tol > 0.0, "tolerance must be positive");
    let t = reduce(theta);
    if t == 0.0 || t == FRAC_PI_2 {
        return 0.0;
    }
    let n = series_terms(t, tol);
    let (s1, c1) = (2.0 * t).sin_cos();
    let (mut s, mut c) = (s1, c1);
    let mut sum = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        sum += s / (kf * kf);
        if k % 1024 == 0 {
            let (a, b) = (2.0 * (kf + 1.0) * t).sin_cos();
            s = a;
            c = b;
        } else {
            let ns = s * c1 + c * s1;
            c = c * c1 - s * s1;
            s = ns;
        }
    }
    0.5 * sum
}

fn log_sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        -u2 / 6.0 - u2 * u2 / 180.0
    } else {
        (u.sin() / u).ln()
    }
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Direct quadrature of the defining integral, with the logarithmic singularity
/// at 0 split off analytically.
pub fn lobachevsky_quadrature(theta: f64, tol: f64) -> f64 {
    let t = reduce(theta);
    if t == 0.0 {
        return 0.0;
    }
    if t > FRAC_PI_2 {
        return -lobachevsky_quadrature(PI - t, tol);
    }
    let smooth = adaptive_simpson(&log_sinc, 0.0, t, tol);
    -(t * (2.0 * t).ln() - t + smooth)
}

/// `|B_2n|` for `n = 1..`.
const BERNOULLI_ABS: &[f64] = &[
    1.0 / 6.0,
    1.0 / 30.0,
    1.0 / 42.0,
    1.0 / 30.0,
    5.0 / 66.0,
    691.0 / 2730.0,
    7.0 / 6.0,
    3617.0 / 510.0,
    43867.0 / 798.0,
    174611.0 / 330.0,
    854513.0 / 138.0,
    236364091.0 / 2730.0,
];

pub const ASYMPTOTIC_RADIUS: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticValue {
    pub value: f64,
    /// False when `|θ|` exceeds [`ASYMPTOTIC_RADIUS`] and the partial sum is unreliable.
    pub within_regime: bool,
}

/// `θ(1 - log|2θ| + Σ |B_2n| (2θ)^{2n} / (2n (2n+1)!))`, up to 12 terms.
pub fn lobachevsky_asymptotic(theta: f64, terms: usize) -> AsymptoticValue {
    if theta == 0.0 {
        return AsymptoticValue { value: 0.0, within_regime: true };
    }
    let x2 = (2.0 * theta) * (2.0 * theta);
    let mut pow = 1.0;
    let mut fact = 1.0; // (2n+1)!
    let mut sum = 0.0;
    for (i, b) in BERNOULLI_ABS.iter().take(terms).enumerate() {
        let n = (i + 1) as f64;
        pow *= x2;
        fact *= (2.0 * n) * (2.0 * n + 1.0);
        sum += b * pow / (2.0 * n * fact);
    }
    AsymptoticValue {
        value: theta * (1.0 - (2.0 * theta).abs().ln() + sum),
        within_regime: theta.abs() <= ASYMPTOTIC_RADIUS,
    }
}

pub fn evaluate(method: Method, theta: f64, tol: f64) -> f64 {
    match method {
        Method::Series => lobachevsky(theta, tol),
        Method::Quadrature => lobachevsky_quadrature(theta, tol),
        Method::Asymptotic => lobachevsky_asymptotic(theta, BERNOULLI_ABS.len()).value,
    }
}
