//! Dense ground truth for small matrices.
//!
//! Cyclic Jacobi rotations diagonalize the matrix to an off-diagonal
//! Frobenius norm below `1e-12 ‖A‖_F`. Cost is O(m³) per sweep, so this is
//! for validation only and refuses matrices above a size cap.

use serde::Serialize;

use crate::chebyshev::xlogx;
use crate::error::{Error, Result};
use crate::sparse::SymmetricSparseMatrix;

pub const DEFAULT_MAX_DIM: usize = 2000;

/// Eigenvalues below `-PSD_SLACK * max|lambda|` mean the input is not PSD.
pub const PSD_SLACK: f64 = 1e-9;

const OFF_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given values.
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Eigenvalues with orthonormal eigenvectors (column `k` of the row-major
/// `vectors` belongs to `values[k]`). Not sorted.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub dim: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    /// `Q f(D) Q^T` as a dense row-major matrix.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let m = self.dim;
        let fd: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let s: f64 = (0..m)
                    .map(|k| self.vectors[i * m + k] * fd[k] * self.vectors[j * m + k])
                    .sum();
                out[i * m + j] = s;
                out[j * m + i] = s;
            }
        }
        out
    }

    /// `v^T Q f(D) Q^T v` without forming the matrix.
    pub fn quadratic_form(&self, v: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        let m = self.dim;
        (0..m)
            .map(|k| {
                let c: f64 = (0..m).map(|i| self.vectors[i * m + k] * v[i]).sum();
                c * c * f(self.values[k])
            })
            .sum()
    }
}

/// Full eigendecomposition by cyclic Jacobi. Refuses `m > max_dim`.
pub fn dense_eigen(a: &SymmetricSparseMatrix, max_dim: usize) -> Result<SymmetricEigen> {
    let m = a.dim();
    if m > max_dim {
        return Err(Error::TooLarge { dim: m, cap: max_dim });
    }
    let (values, vectors) = jacobi(a.to_dense(), m, true);
    Ok(SymmetricEigen { dim: m, values, vectors })
}

/// Eigenvalues only, with the default size cap.
pub fn dense_spectrum(a: &SymmetricSparseMatrix) -> Result<Spectrum> {
    dense_spectrum_with_cap(a, DEFAULT_MAX_DIM)
}

pub fn dense_spectrum_with_cap(a: &SymmetricSparseMatrix, max_dim: usize) -> Result<Spectrum> {
    let m = a.dim();
    if m > max_dim {
        return Err(Error::TooLarge { dim: m, cap: max_dim });
    }
    let (values, _) = jacobi(a.to_dense(), m, false);
    Ok(Spectrum::new(values))
}

fn jacobi(mut a: Vec<f64>, m: usize, want_vectors: bool) -> (Vec<f64>, Vec<f64>) {
    let mut v = if want_vectors {
        let mut q = vec![0.0; m * m];
        for i in 0..m {
            q[i * m + i] = 1.0;
        }
        q
    } else {
        Vec::new()
    };

    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_TOL * frob;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a, m);
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                // Rotation angle zeroing a_pq (Rutishauser's formulation).
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * m + p] = app - t * apq;
                a[q * m + q] = aqq + t * apq;
                a[p * m + q] = 0.0;
                a[q * m + p] = 0.0;
                for r in 0..m {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * m + p];
                    let arq = a[r * m + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * m + p] = new_rp;
                    a[p * m + r] = new_rp;
                    a[r * m + q] = new_rq;
                    a[q * m + r] = new_rq;
                }
                if want_vectors {
                    for r in 0..m {
                        let vrp = v[r * m + p];
                        let vrq = v[r * m + q];
                        v[r * m + p] = vrp - s * (vrq + tau * vrp);
                        v[r * m + q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }
    let values = (0..m).map(|i| a[i * m + i]).collect();
    (values, v)
}

fn off_diagonal_norm(a: &[f64], m: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                s += a[i * m + j] * a[i * m + j];
            }
        }
    }
    s.sqrt()
}

/// Fails if some eigenvalue lies below `-PSD_SLACK * max|lambda|`.
pub fn check_psd(spec: &Spectrum) -> Result<()> {
    let scale = spec.min().abs().max(spec.max().abs());
    let threshold = PSD_SLACK * scale;
    match spec.eigenvalues().first() {
        Some(&lo) if lo < -threshold => Err(Error::NotPsd { eigenvalue: lo, threshold }),
        _ => Ok(()),
    }
}

/// `-sum L(lambda)`, clamping round-off negatives to zero.
pub fn exact_entropy(spec: &Spectrum) -> Result<f64> {
    check_psd(spec)?;
    Ok(-spec.eigenvalues().iter().map(|&l| xlogx(l.max(0.0))).sum::<f64>())
}

/// Entropy of the `m × m` stiffness matrix from its closed-form spectrum
/// `4 sin²(i pi / (2m + 2))`, `i = 1..m`.
pub fn fem_exact_entropy(m: usize) -> f64 {
    -fem_eigenvalues(m).map(xlogx).sum::<f64>()
}

/// Closed-form eigenvalues of the stiffness matrix, increasing.
pub fn fem_eigenvalues(m: usize) -> impl Iterator<Item = f64> {
    let denom = 2.0 * m as f64 + 2.0;
    (1..=m).map(move |i| {
        let s = (i as f64 * std::f64::consts::PI / denom).sin();
        4.0 * s * s
    })
}

/// Summary printed by the `oracle` command.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub entropy: f64,
    pub min_eig: f64,
    pub max_eig: f64,
    pub trace: f64,
    pub dim: usize,
}

pub fn oracle_report(a: &SymmetricSparseMatrix, max_dim: usize) -> Result<OracleReport> {
    let spec = dense_spectrum_with_cap(a, max_dim)?;
    Ok(OracleReport {
        entropy: exact_entropy(&spec)?,
        min_eig: spec.min(),
        max_eig: spec.max(),
        trace: a.trace(),
        dim: a.dim(),
    })
}
