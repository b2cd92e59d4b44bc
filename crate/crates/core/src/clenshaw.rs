//! Quadratic forms `gamma0 * v^T p_n(A / gamma0) v` from matrix-vector
//! products alone.
//!
//! The matrix polynomial is never formed. With `y_k = B_k v` the backward
//! recurrence reads
//!
//! ```text
//! y_k = a_k v + (4 / (x0 gamma0)) A y_{k+1} - 2 y_{k+1} - y_{k+2},   k = n, ..., 0
//! ```
//!
//! and the form is `(gamma0 / 2) v^T (y_0 - y_2)`. The `k = n` step acts on
//! the zero vector and is skipped, so a degree-`n` evaluation costs `n`
//! matvecs.

use crate::chebyshev::ChebyshevExpansion;
use crate::error::{Error, Result};
use crate::sparse::SymmetricSparseMatrix;

/// A vector with every entry exactly `-1.0` or `+1.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignVector(Vec<f64>);

impl SignVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = entries
            .iter()
            .enumerate()
            .find(|(_, &v)| v != 1.0 && v != -1.0)
        {
            return Err(Error::NotSignVector { index, value });
        }
        Ok(Self(entries))
    }

    /// Wraps entries already known to be `±1`.
    pub(crate) fn from_signs_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|&v| v == 1.0 || v == -1.0));
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for SignVector {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

impl AsRef<[f64]> for SignVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Recurrence state `y_{k+1}`, `y_{k+2}` and a scratch vector, reused across
/// evaluations of the same dimension.
#[derive(Debug, Clone)]
pub struct ClenshawWorkspace {
    y_cur: Vec<f64>,
    y_next: Vec<f64>,
    y_after: Vec<f64>,
}

impl ClenshawWorkspace {
    pub fn new(dim: usize) -> Self {
        Self {
            y_cur: vec![0.0; dim],
            y_next: vec![0.0; dim],
            y_after: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.y_cur.len()
    }

    fn reset(&mut self) {
        self.y_cur.fill(0.0);
        self.y_next.fill(0.0);
        self.y_after.fill(0.0);
    }
}

/// `gamma0 * v^T p_n(A / gamma0) v` with a fresh workspace.
pub fn quadratic_form(
    a: &SymmetricSparseMatrix,
    v: &SignVector,
    expansion: &ChebyshevExpansion,
    gamma0: f64,
) -> Result<f64> {
    let mut ws = ClenshawWorkspace::new(a.dim());
    quadratic_form_with(a, v, expansion, gamma0, &mut ws)
}

/// As [`quadratic_form`], reusing `ws`.
pub fn quadratic_form_with(
    a: &SymmetricSparseMatrix,
    v: &SignVector,
    expansion: &ChebyshevExpansion,
    gamma0: f64,
    ws: &mut ClenshawWorkspace,
) -> Result<f64> {
    let m = a.dim();
    if v.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v.len(),
        });
    }
    if ws.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: ws.dim(),
        });
    }
    if !(gamma0 > 0.0 && gamma0.is_finite()) {
        return Err(Error::domain(format!("gamma0 must be positive, got {gamma0}")));
    }
    if expansion.degree() == 0 {
        return Err(Error::domain("matrix Clenshaw evaluation requires degree >= 1"));
    }
    Ok(quadratic_form_unchecked(a, v.as_slice(), expansion, gamma0, ws))
}

/// Core recurrence. `v` must have length `m` and entries `±1`.
pub(crate) fn quadratic_form_unchecked(
    a: &SymmetricSparseMatrix,
    v: &[f64],
    expansion: &ChebyshevExpansion,
    gamma0: f64,
    ws: &mut ClenshawWorkspace,
) -> f64 {
    let coeffs = expansion.coeffs();
    let n = expansion.degree();
    let scale = 4.0 / (expansion.x0() * gamma0);
    ws.reset();

    // y_cur = y_{k+1}, y_next = y_{k+2}, y_after = output buffer for y_k.
    // k = n: y_n = a_n v (A * 0 skipped).
    for (y, &vi) in ws.y_cur.iter_mut().zip(v) {
        *y = coeffs[n] * vi;
    }
    for k in (0..n).rev() {
        a.apply(&ws.y_cur, &mut ws.y_after);
        let ak = coeffs[k];
        for (((out, &vi), &c), &nx) in ws.y_after.iter_mut().zip(v).zip(&ws.y_cur).zip(&ws.y_next) {
            *out = ak * vi + scale * *out - 2.0 * c - nx;
        }
        // (y_{k+1}, y_{k+2}, scratch) <- (y_k, y_{k+1}, old y_{k+2})
        std::mem::swap(&mut ws.y_next, &mut ws.y_after);
        std::mem::swap(&mut ws.y_cur, &mut ws.y_next);
    }
    // Now y_cur = y_0, y_next = y_1, y_after = y_2 (zero when n = 1).
    let form: f64 = v
        .iter()
        .zip(ws.y_cur.iter().zip(&ws.y_after))
        .map(|(vi, (y0, y2))| vi * (y0 - y2))
        .sum();
    0.5 * gamma0 * form
}
