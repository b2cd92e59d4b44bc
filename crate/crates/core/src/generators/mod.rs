//! Test and experiment matrices.

mod spdc;

pub use spdc::{spdc_density_matrix, Dispersion, PhotonDispersion, SpdcMatrix, SpdcParams};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sparse::SymmetricSparseMatrix;

/// Tridiagonal stiffness matrix of the 1-D Laplacian: 2 on the diagonal, -1
/// next to it.
pub fn fem_matrix(m: usize) -> Result<SymmetricSparseMatrix> {
    if m == 0 {
        return Err(Error::domain("matrix size must be positive"));
    }
    let mut triplets = Vec::with_capacity(2 * m);
    for i in 0..m {
        triplets.push((i, i, 2.0));
        if i + 1 < m {
            triplets.push((i + 1, i, -1.0));
        }
    }
    SymmetricSparseMatrix::from_symmetric_triplets(m, triplets)
}

pub const RANDOM_PSD_MAX_DIM: usize = 2000;

/// `Q diag(spectrum) Q^T` with `Q` a seeded product of `4m` random Givens
/// rotations.
///
/// A constant spectrum commutes with every rotation, so it yields `c I`
/// exactly.
pub fn random_psd(m: usize, seed: u64, spectrum: &[f64]) -> Result<SymmetricSparseMatrix> {
    if m == 0 || m > RANDOM_PSD_MAX_DIM {
        return Err(Error::domain(format!(
            "random_psd size must lie in 1..={RANDOM_PSD_MAX_DIM}, got {m}"
        )));
    }
    if spectrum.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: spectrum.len(),
        });
    }
    if let Some(&bad) = spectrum.iter().find(|&&l| !(l >= 0.0) || !l.is_finite()) {
        return Err(Error::domain(format!("spectrum entries must be nonnegative, got {bad}")));
    }
    if spectrum.iter().all(|&l| l == spectrum[0]) {
        return SymmetricSparseMatrix::diagonal(spectrum);
    }

    let mut a = vec![0.0; m * m];
    for (i, &l) in spectrum.iter().enumerate() {
        a[i * m + i] = l;
    }
    if m > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 * m {
            let p = rng.random_range(0..m);
            let mut q = rng.random_range(0..m - 1);
            if q >= p {
                q += 1;
            }
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            rotate(&mut a, m, p, q, theta.cos(), theta.sin());
        }
    }
    // Symmetrize away rounding differences between the two triangles.
    for i in 0..m {
        for j in i + 1..m {
            let s = 0.5 * (a[i * m + j] + a[j * m + i]);
            a[i * m + j] = s;
            a[j * m + i] = s;
        }
    }
    SymmetricSparseMatrix::from_dense(m, &a)
}

/// `A <- G A G^T` for the rotation in the `(p, q)` plane.
fn rotate(a: &mut [f64], m: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m {
        let (ap, aq) = (a[p * m + k], a[q * m + k]);
        a[p * m + k] = c * ap - s * aq;
        a[q * m + k] = s * ap + c * aq;
    }
    for k in 0..m {
        let (ap, aq) = (a[k * m + p], a[k * m + q]);
        a[k * m + p] = c * ap - s * aq;
        a[k * m + q] = s * ap + c * aq;
    }
}

/// `c I_m`.
pub fn scaled_identity(m: usize, c: f64) -> Result<SymmetricSparseMatrix> {
    if m == 0 {
        return Err(Error::domain("matrix size must be positive"));
    }
    SymmetricSparseMatrix::diagonal(&vec![c; m])
}

/// The maximally mixed state `I_m / m`.
pub fn maximally_mixed(m: usize) -> Result<SymmetricSparseMatrix> {
    scaled_identity(m, 1.0 / m.max(1) as f64)
}
