//! Compressed-row storage for real symmetric matrices.
//!
//! Both triangles are stored explicitly so that a matrix-vector product is a
//! single sweep over the rows. Positive semidefiniteness is an input contract
//! and is never checked here; see [`crate::oracle`] for a dense check on small
//! matrices.

mod bounds;
mod matrix_market;

pub use bounds::{gershgorin_upper_bound, power_iteration_bound, BoundMethod, PowerIteration, SpectralBound};
pub use matrix_market::{read_matrix_market, write_matrix_market, write_matrix_market_to, MatrixMarketReader};

use crate::error::{Error, Result};

/// Relative tolerance used when checking `A_ij == A_ji`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric matrix in CSR form with both triangles present.
///
/// Immutable after construction; column indices within each row are sorted
/// and unique.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SymmetricSparseMatrix {
    /// Builds a matrix from `(row, col, value)` triplets covering both
    /// triangles. Duplicates are summed. Fails if an index is out of range or
    /// if the result is not numerically symmetric.
    pub fn from_triplets<I>(dim: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries: Vec<(usize, usize, f64)> = triplets.into_iter().collect();
        Self::build(dim, &mut entries)
    }

    /// Builds a matrix from one triangle; every off-diagonal triplet is
    /// mirrored. Duplicates are summed.
    pub fn from_symmetric_triplets<I>(dim: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries = Vec::new();
        for (i, j, v) in triplets {
            entries.push((i, j, v));
            if i != j {
                entries.push((j, i, v));
            }
        }
        Self::build(dim, &mut entries)
    }

    /// Builds a matrix from a dense row-major slice, dropping exact zeros.
    pub fn from_dense(dim: usize, data: &[f64]) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        let triplets = data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(k, &v)| (k / dim.max(1), k % dim.max(1), v));
        Self::from_triplets(dim, triplets)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; dim])
    }

    /// Diagonal matrix. Zero diagonal entries are not stored.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let triplets = diag
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0.0)
            .map(|(i, &d)| (i, i, d));
        Self::from_triplets(diag.len(), triplets)
    }

    /// The `dim × dim` zero matrix (no stored entries).
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_triplets(dim, std::iter::empty())
    }

    fn build(dim: usize, entries: &mut [(usize, usize, f64)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Structure("matrix dimension must be positive".into()));
        }
        for &(i, j, v) in entries.iter() {
            if i >= dim || j >= dim {
                return Err(Error::Structure(format!(
                    "entry ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Structure(format!("entry ({i}, {j}) is not finite: {v}")));
            }
        }
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));

        let mut row_ptr = vec![0usize; dim + 1];
        let mut col_idx = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for &(i, j, v) in entries.iter() {
            if last == Some((i, j)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
                continue;
            }
            col_idx.push(j);
            values.push(v);
            row_ptr[i + 1] += 1;
            last = Some((i, j));
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }

        let matrix = Self {
            dim,
            row_ptr,
            col_idx,
            values,
        };
        matrix.check_symmetry()?;
        Ok(matrix)
    }

    fn check_symmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                if j <= i {
                    continue;
                }
                let mirror = self.get(j, i);
                let ok = match mirror {
                    Some(w) => (v - w).abs() <= SYMMETRY_TOL * v.abs().max(1.0),
                    None => false,
                };
                if !ok {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        value: v,
                        mirror,
                    });
                }
            }
        }
        // Entries below the diagonal without a partner above.
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                if j < i && self.get(j, i).is_none() {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        value: v,
                        mirror: None,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored entries (both triangles).
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterator over `(column, value)` of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    /// Stored value at `(i, j)`, if present.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .binary_search(&j)
            .ok()
            .map(|k| self.values[range.start + k])
    }

    /// Iterator over all stored `(row, col, value)` triplets in row order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    /// Largest `|i - j|` over stored entries.
    pub fn bandwidth(&self) -> usize {
        self.triplets().map(|(i, j, _)| i.abs_diff(j)).max().unwrap_or(0)
    }

    /// `A v`, allocating the result.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.matvec_into(v, &mut out)?;
        Ok(out)
    }

    /// `out = A v`. Each row is summed left to right, so results are
    /// bit-reproducible.
    pub fn matvec_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if out.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: out.len(),
            });
        }
        self.apply(v, out);
        Ok(())
    }

    /// Unchecked product for hot loops; lengths are debug-asserted.
    #[inline]
    pub(crate) fn apply(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (i, o) in out.iter_mut().enumerate() {
            let (start, end) = (self.row_ptr[i], self.row_ptr[i + 1]);
            let mut acc = 0.0;
            for k in start..end {
                acc += self.values[k] * v[self.col_idx[k]];
            }
            *o = acc;
        }
    }

    /// Sum of stored diagonal values.
    pub fn trace(&self) -> f64 {
        (0..self.dim).filter_map(|i| self.get(i, i)).sum()
    }

    /// Dense row-major copy. Intended for small matrices.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim * self.dim];
        for (i, j, v) in self.triplets() {
            out[i * self.dim + j] = v;
        }
        out
    }
}

/// Free-function form of [`SymmetricSparseMatrix::matvec`].
pub fn matvec(a: &SymmetricSparseMatrix, v: &[f64]) -> Result<Vec<f64>> {
    a.matvec(v)
}

/// Free-function form of [`SymmetricSparseMatrix::trace`].
pub fn trace(a: &SymmetricSparseMatrix) -> f64 {
    a.trace()
}
