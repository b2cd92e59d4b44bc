//! Von Neumann entropy `-tr(A log A)` of large, sparse, real symmetric
//! positive semidefinite matrices, without eigendecomposition.
//!
//! The pieces:
//!
//! - [`sparse`]: CSR storage, Matrix Market I/O and spectral upper bounds.
//! - [`chebyshev`]: closed-form Chebyshev series of `x log x` and its error
//!   bound.
//! - [`clenshaw`]: `v^T p_n(A) v` from `n` matrix-vector products.
//! - [`estimator`]: Rademacher sampling with Hoeffding-controlled sample
//!   counts and error tolerances.
//! - [`oracle`]: dense Jacobi eigensolver and closed-form spectra, for
//!   validation at small sizes.
//! - [`generators`]: stiffness, photon-pair and random PSD test matrices.
//! - [`cli`]: the `sparse-entropy` command line.
//!
//! ```
//! use sparse_entropy::prelude::*;
//!
//! let a = fem_matrix(50).unwrap();
//! let est = EntropyEstimator::new(&a, 3).seed(1).adaptive().unwrap();
//! let exact = fem_exact_entropy(50);
//! assert!((est.value - exact).abs() < est.tau);
//! ```

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
pub mod clenshaw;
pub mod cli;
pub mod error;
pub mod estimator;
pub mod generators;
pub mod oracle;
pub mod sparse;

pub use error::{Error, Result};
pub use sparse::SymmetricSparseMatrix;

pub mod prelude {
    pub use crate::chebyshev::{entropy_function, truncation_error_bound, ChebyshevExpansion};
    pub use crate::clenshaw::{quadratic_form, SignVector};
    pub use crate::error::{Error, Result};
    pub use crate::estimator::{EntropyEstimate, EntropyEstimator, RademacherSampler, ScalingParams};
    pub use crate::generators::{fem_matrix, random_psd, spdc_density_matrix, SpdcParams};
    pub use crate::oracle::{dense_spectrum, exact_entropy, fem_exact_entropy};
    pub use crate::sparse::{gershgorin_upper_bound, power_iteration_bound, SymmetricSparseMatrix};
}
