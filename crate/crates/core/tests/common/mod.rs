//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_entropy::SymmetricSparseMatrix;

pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    // Split into panels first so oscillatory integrands are resolved.
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = simpson(lo, hi, fa, fm, fb);
            adaptive(&f, lo, hi, fa, fm, fb, whole, tol / panels as f64, 40)
        })
        .sum()
}

/// `(2/pi) int_0^pi L((x0/2)(cos t + 1)) cos(k t) dt`.
pub fn quadrature_coefficient(k: usize, x0: f64) -> f64 {
    let f = |t: f64| xlogx(0.5 * x0 * (t.cos() + 1.0)) * (k as f64 * t).cos();
    2.0 / PI * integrate(f, 0.0, PI, 1e-13)
}

/// `a0/2 + sum a_k cos(k arccos(2x/x0 - 1))`, no recurrence.
pub fn chebyshev_direct(coeffs: &[f64], x0: f64, x: f64) -> f64 {
    let theta = (2.0 * x / x0 - 1.0).clamp(-1.0, 1.0).acos();
    0.5 * coeffs[0]
        + coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * (k as f64 * theta).cos())
            .sum::<f64>()
}

/// Every vector in `{-1, +1}^m`.
pub fn all_sign_vectors(m: usize) -> impl Iterator<Item = Vec<f64>> {
    (0u64..1 << m).map(move |bits| {
        (0..m)
            .map(|i| if bits >> i & 1 == 1 { -1.0 } else { 1.0 })
            .collect()
    })
}

pub fn dense_quadratic(a: &[f64], m: usize, v: &[f64]) -> f64 {
    (0..m)
        .map(|i| v[i] * (0..m).map(|j| a[i * m + j] * v[j]).sum::<f64>())
        .sum()
}

/// Random symmetric matrix, off-diagonal entries in `(-1, 1)`, diagonal in `[1, 2)`.
pub fn random_symmetric(m: usize, seed: u64) -> SymmetricSparseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![0.0; m * m];
    for i in 0..m {
        a[i * m + i] = rng.random_range(1.0..2.0);
        for j in 0..i {
            let v = rng.random_range(-1.0..1.0);
            a[i * m + j] = v;
            a[j * m + i] = v;
        }
    }
    SymmetricSparseMatrix::from_dense(m, &a).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rounds to `digits` significant figures.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(digits - 1 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}
