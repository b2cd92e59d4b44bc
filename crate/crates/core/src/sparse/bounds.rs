use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SymmetricSparseMatrix;
use crate::error::{Error, Result};

/// How an upper bound on the spectrum was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    /// Certified for symmetric PSD input.
    Gershgorin,
    /// Heuristic: Rayleigh quotient times a safety factor.
    PowerIteration,
    UserSupplied,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMethod::Gershgorin => "gershgorin",
            BoundMethod::PowerIteration => "power-iteration",
            BoundMethod::UserSupplied => "user-supplied",
        }
    }
}

/// Upper bound on the largest eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralBound {
    pub lambda_max_upper: f64,
    pub method: BoundMethod,
}

impl SpectralBound {
    pub fn user(lambda_max_upper: f64) -> Result<Self> {
        if !(lambda_max_upper >= 0.0) || !lambda_max_upper.is_finite() {
            return Err(Error::domain(format!(
                "spectral bound must be finite and nonnegative, got {lambda_max_upper}"
            )));
        }
        Ok(Self {
            lambda_max_upper,
            method: BoundMethod::UserSupplied,
        })
    }
}

/// `max_i (A_ii + sum_{j != i} |A_ij|)`, clamped below at zero.
pub fn gershgorin_upper_bound(a: &SymmetricSparseMatrix) -> SpectralBound {
    let mut best = 0.0f64;
    for i in 0..a.dim() {
        let mut center = 0.0;
        let mut radius = 0.0;
        for (j, v) in a.row(i) {
            if j == i {
                center = v;
            } else {
                radius += v.abs();
            }
        }
        best = best.max(center + radius);
    }
    SpectralBound {
        lambda_max_upper: best,
        method: BoundMethod::Gershgorin,
    }
}

/// Settings for [`power_iteration_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerIteration {
    pub max_iters: usize,
    pub rel_tol: f64,
    pub safety: f64,
    pub seed: u64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self {
            max_iters: 1000,
            rel_tol: 1e-8,
            safety: 1.05,
            seed: 0,
        }
    }
}

/// Seeded power iteration. Returns `safety` times the final Rayleigh
/// quotient; this underestimates for slow convergence, hence heuristic.
pub fn power_iteration_bound(a: &SymmetricSparseMatrix, opts: &PowerIteration) -> Result<SpectralBound> {
    if opts.max_iters == 0 {
        return Err(Error::domain("power iteration needs max_iters >= 1"));
    }
    if !(opts.safety >= 1.0) {
        return Err(Error::domain(format!("safety factor must be >= 1, got {}", opts.safety)));
    }
    if !(opts.rel_tol > 0.0) {
        return Err(Error::domain(format!("rel_tol must be positive, got {}", opts.rel_tol)));
    }

    let m = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    normalize(&mut x);
    let mut y = vec![0.0; m];
    let mut rayleigh = f64::NAN;

    for _ in 0..opts.max_iters {
        a.apply(&x, &mut y);
        let next = dot(&x, &y);
        let norm = dot(&y, &y).sqrt();
        if norm == 0.0 {
            return Ok(SpectralBound {
                lambda_max_upper: 0.0,
                method: BoundMethod::PowerIteration,
            });
        }
        let converged = rayleigh.is_finite() && (next - rayleigh).abs() < opts.rel_tol * next.abs();
        rayleigh = next;
        if converged {
            break;
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }

    Ok(SpectralBound {
        lambda_max_upper: (opts.safety * rayleigh).max(0.0),
        method: BoundMethod::PowerIteration,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let n = dot(x, x).sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
}
