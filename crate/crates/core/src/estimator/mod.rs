//! Stochastic estimation of the von Neumann entropy `-tr(A log A)`.
//!
//! For `sigma(A) ⊆ [0, x0 gamma0]`,
//!
//! ```text
//! E(A) = -gamma0 tr L(A / gamma0) - log(gamma0) tr(A),
//! ```
//!
//! and `tr L(A / gamma0)` is replaced by a Rademacher average of
//! `w^T p_n(A / gamma0) w`, each evaluated with [`crate::clenshaw`]. The
//! adaptive driver grows the sample count until Hoeffding's bound balances
//! the truncation error; the fixed driver uses a prescribed count.
//!
//! Samples are evaluated in parallel (rayon) but reduced in index order, so
//! results do not depend on the thread count.

mod hoeffding;
mod sampler;

pub use hoeffding::{delta_floor, error_tolerance, sample_count, sample_count_real, truncation_term};
pub use sampler::{hutchinson_trace, sample_vector, RademacherSampler};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chebyshev::ChebyshevExpansion;
use crate::clenshaw::{quadratic_form_unchecked, ClenshawWorkspace};
use crate::error::{Error, Result};
use crate::sparse::{gershgorin_upper_bound, BoundMethod, SpectralBound, SymmetricSparseMatrix};

pub const DEFAULT_CONFIDENCE: f64 = 0.95;
pub const DEFAULT_MAX_SAMPLES: usize = 10_000;
pub const DEFAULT_X0: f64 = 1.0;

/// Smallest cap accepted by the adaptive driver.
pub const MIN_MAX_SAMPLES: usize = 8;

// Upper bound on how many samples are evaluated concurrently.
const BATCH: usize = 512;

/// Interval parameters with `sigma(A) ⊆ [0, x0 gamma0]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingParams {
    pub x0: f64,
    pub gamma0: f64,
    pub provenance: BoundMethod,
}

impl ScalingParams {
    pub fn new(x0: f64, gamma0: f64, provenance: BoundMethod) -> Result<Self> {
        if !(x0 > 0.0 && x0.is_finite()) {
            return Err(Error::domain(format!("x0 must be positive, got {x0}")));
        }
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::domain(format!("gamma0 must be positive, got {gamma0}")));
        }
        Ok(Self { x0, gamma0, provenance })
    }

    /// `gamma0 = lambda_max_upper / x0`, so that `x0 gamma0` equals the bound.
    pub fn from_bound(bound: &SpectralBound, x0: f64) -> Result<Self> {
        if !(bound.lambda_max_upper > 0.0) {
            return Err(Error::domain(format!(
                "spectral bound {} is not positive; cannot scale",
                bound.lambda_max_upper
            )));
        }
        Self::new(x0, bound.lambda_max_upper / x0, bound.method)
    }

    /// Default choice: `x0 = 1`, `gamma0` from Gershgorin discs.
    pub fn gershgorin(a: &SymmetricSparseMatrix) -> Result<Self> {
        Self::from_bound(&gershgorin_upper_bound(a), DEFAULT_X0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateMode {
    Fixed,
    Adaptive,
}

/// Result of an entropy estimation run.
///
/// `value` is in nats. When `normalized` is set, `value`, `trace`, `scaling`
/// and the per-sample extremes refer to `A / tr(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub value: f64,
    pub tau: f64,
    pub confidence: f64,
    pub samples_used: usize,
    pub degree: usize,
    pub delta: f64,
    pub xi_min: f64,
    pub xi_max: f64,
    pub trace: f64,
    /// `None` only for the zero-trace short circuit.
    pub scaling: Option<ScalingParams>,
    pub seed: u64,
    pub capped: bool,
    pub mode: EstimateMode,
    pub dim: usize,
    pub normalized: bool,
    pub zero_trace: bool,
    pub max_samples: Option<usize>,
}

impl EntropyEstimate {
    /// Entropy in bits.
    pub fn value_bits(&self) -> f64 {
        self.value / std::f64::consts::LN_2
    }

    /// `[value - tau, value + tau]`.
    pub fn interval(&self) -> (f64, f64) {
        (self.value - self.tau, self.value + self.tau)
    }
}

#[derive(Serialize)]
struct EstimateRecord<'a> {
    entropy: f64,
    tau: f64,
    confidence: f64,
    samples: usize,
    degree: usize,
    delta: f64,
    gamma0: Option<f64>,
    x0: Option<f64>,
    trace: f64,
    seed: u64,
    capped: bool,
    mode: EstimateMode,
    dim: usize,
    normalized: bool,
    zero_trace: bool,
    bound_method: Option<&'a str>,
    xi_min: f64,
    xi_max: f64,
    max_samples: Option<usize>,
    unit: &'static str,
}

impl Serialize for EntropyEstimate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        EstimateRecord {
            entropy: self.value,
            tau: self.tau,
            confidence: self.confidence,
            samples: self.samples_used,
            degree: self.degree,
            delta: self.delta,
            gamma0: self.scaling.map(|s| s.gamma0),
            x0: self.scaling.map(|s| s.x0),
            trace: self.trace,
            seed: self.seed,
            capped: self.capped,
            mode: self.mode,
            dim: self.dim,
            normalized: self.normalized,
            zero_trace: self.zero_trace,
            bound_method: self.scaling.map(|s| s.provenance.as_str()),
            xi_min: self.xi_min,
            xi_max: self.xi_max,
            max_samples: self.max_samples,
            unit: "nats",
        }
        .serialize(serializer)
    }
}

/// Configurable estimator over a borrowed matrix.
///
/// ```
/// use sparse_entropy::{generators::fem_matrix, estimator::EntropyEstimator};
///
/// let a = fem_matrix(100).unwrap();
/// let est = EntropyEstimator::new(&a, 3).seed(7).adaptive().unwrap();
/// assert!((est.value + 199.23).abs() < est.tau);
/// ```
#[derive(Debug, Clone)]
pub struct EntropyEstimator<'a> {
    matrix: &'a SymmetricSparseMatrix,
    degree: usize,
    confidence: f64,
    scaling: Option<ScalingParams>,
    sampler: RademacherSampler,
    max_samples: usize,
    normalize: bool,
}

impl<'a> EntropyEstimator<'a> {
    pub fn new(matrix: &'a SymmetricSparseMatrix, degree: usize) -> Self {
        Self {
            matrix,
            degree,
            confidence: DEFAULT_CONFIDENCE,
            scaling: None,
            sampler: RademacherSampler::new(0),
            max_samples: DEFAULT_MAX_SAMPLES,
            normalize: false,
        }
    }

    pub fn confidence(mut self, p: f64) -> Self {
        self.confidence = p;
        self
    }

    /// Scaling for the matrix as stored (before any normalization). Defaults
    /// to [`ScalingParams::gershgorin`].
    pub fn scaling(mut self, scaling: ScalingParams) -> Self {
        self.scaling = Some(scaling);
        self
    }

    pub fn sampler(mut self, sampler: RademacherSampler) -> Self {
        self.sampler = sampler;
        self
    }

    pub fn seed(self, seed: u64) -> Self {
        self.sampler(RademacherSampler::new(seed))
    }

    pub fn max_samples(mut self, cap: usize) -> Self {
        self.max_samples = cap;
        self
    }

    /// Estimate the entropy of `A / tr(A)` instead of `A`.
    pub fn normalize(mut self, normalize: bool) -> Self {
        self.normalize = normalize;
        self
    }

    /// Algorithm with a prescribed number of samples.
    pub fn fixed(&self, samples: usize) -> Result<EntropyEstimate> {
        if samples == 0 {
            return Err(Error::domain("need at least one sample"));
        }
        let run = match self.prepare(EstimateMode::Fixed)? {
            Prepared::Zero(est) => return Ok(est),
            Prepared::Run(run) => run,
        };
        let mut acc = Accumulator::new();
        let mut next = 1u64;
        while (next as usize) <= samples {
            let last = (next + BATCH as u64 - 1).min(samples as u64);
            for xi in run.evaluate(next..=last) {
                acc.push(xi);
            }
            next = last + 1;
        }
        run.finish(&acc, samples, false, None)
    }

    /// Adaptive algorithm: after every sample the spread `delta` and the
    /// required count `N` are recomputed; sampling stops once `N` samples have
    /// been drawn, or at the cap.
    pub fn adaptive(&self) -> Result<EntropyEstimate> {
        if self.max_samples < MIN_MAX_SAMPLES {
            return Err(Error::domain(format!(
                "max_samples must be at least {MIN_MAX_SAMPLES}, got {}",
                self.max_samples
            )));
        }
        let run = match self.prepare(EstimateMode::Adaptive)? {
            Prepared::Zero(est) => return Ok(est),
            Prepared::Run(run) => run,
        };

        let mut acc = Accumulator::new();
        let mut drawn = 0usize;
        let mut target = 1usize;
        let mut needed = 1usize;
        // The target never decreases, so every index up to the current target
        // will be drawn; evaluating them as a batch reproduces the serial loop.
        'outer: while drawn < target {
            let first = drawn as u64 + 1;
            let last = target.min(drawn + BATCH) as u64;
            for xi in run.evaluate(first..=last) {
                drawn += 1;
                acc.push(xi);
                needed = sample_count(
                    run.delta(&acc),
                    self.degree,
                    self.confidence,
                    run.dim,
                    run.x0,
                    run.gamma0,
                )?;
                target = needed.min(self.max_samples);
                if drawn >= target {
                    break 'outer;
                }
            }
        }
        run.finish(&acc, drawn, needed > self.max_samples, Some(self.max_samples))
    }

    fn prepare(&self, mode: EstimateMode) -> Result<Prepared<'a>> {
        if self.degree == 0 {
            return Err(Error::domain("degree must be >= 1"));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::domain(format!(
                "confidence must lie in (0, 1), got {}",
                self.confidence
            )));
        }
        let a = self.matrix;
        let trace = a.trace();
        if trace == 0.0 {
            if self.normalize {
                return Err(Error::ZeroTrace);
            }
            // A PSD matrix with zero trace is zero, and L(0) = 0.
            return Ok(Prepared::Zero(EntropyEstimate {
                value: 0.0,
                tau: 0.0,
                confidence: self.confidence,
                samples_used: 0,
                degree: self.degree,
                delta: 0.0,
                xi_min: 0.0,
                xi_max: 0.0,
                trace: 0.0,
                scaling: self.scaling,
                seed: self.sampler.seed(),
                capped: false,
                mode,
                dim: a.dim(),
                normalized: false,
                zero_trace: true,
                max_samples: (mode == EstimateMode::Adaptive).then_some(self.max_samples),
            }));
        }
        if self.normalize && trace < 0.0 {
            return Err(Error::domain(format!("cannot normalize a matrix with trace {trace}")));
        }

        let scaling = match self.scaling {
            Some(s) => s,
            None => ScalingParams::gershgorin(a)?,
        };
        // B = A / divisor is the matrix whose entropy is reported.
        let divisor = if self.normalize { trace } else { 1.0 };
        let effective = ScalingParams {
            gamma0: scaling.gamma0 / divisor,
            ..scaling
        };
        Ok(Prepared::Run(Run {
            matrix: a,
            expansion: ChebyshevExpansion::new(self.degree, scaling.x0)?,
            gamma_matvec: scaling.gamma0,
            divisor,
            x0: scaling.x0,
            gamma0: effective.gamma0,
            scaling: effective,
            trace: trace / divisor,
            dim: a.dim(),
            degree: self.degree,
            confidence: self.confidence,
            seed: self.sampler.seed(),
            sampler: self.sampler,
            mode,
            normalized: self.normalize,
        }))
    }
}

enum Prepared<'a> {
    Zero(EntropyEstimate),
    Run(Run<'a>),
}

struct Run<'a> {
    matrix: &'a SymmetricSparseMatrix,
    expansion: ChebyshevExpansion,
    // gamma0 used inside the recurrence on the stored matrix.
    gamma_matvec: f64,
    divisor: f64,
    // Parameters of the reported (possibly normalized) matrix.
    x0: f64,
    gamma0: f64,
    scaling: ScalingParams,
    trace: f64,
    dim: usize,
    degree: usize,
    confidence: f64,
    seed: u64,
    sampler: RademacherSampler,
    mode: EstimateMode,
    normalized: bool,
}

impl Run<'_> {
    /// `xi_i = gamma0 w_i^T p_n(B / gamma0) w_i` for each index, in order.
    fn evaluate(&self, indices: std::ops::RangeInclusive<u64>) -> Vec<f64> {
        let m = self.dim;
        indices
            .into_par_iter()
            .map_init(
                || (ClenshawWorkspace::new(m), Vec::with_capacity(m)),
                |(ws, w), index| {
                    self.sampler.fill(index, m, w);
                    quadratic_form_unchecked(self.matrix, w, &self.expansion, self.gamma_matvec, ws) / self.divisor
                },
            )
            .collect()
    }

    fn delta(&self, acc: &Accumulator) -> f64 {
        acc.max - acc.min + delta_floor(self.degree, self.dim, self.x0, self.gamma0)
    }

    fn finish(&self, acc: &Accumulator, samples: usize, capped: bool, cap: Option<usize>) -> Result<EntropyEstimate> {
        let delta = self.delta(acc);
        let tau = error_tolerance(delta, self.degree, samples, self.confidence, self.dim, self.x0, self.gamma0)?;
        let value = -acc.sum / samples as f64 - self.gamma0.ln() * self.trace;
        Ok(EntropyEstimate {
            value,
            tau,
            confidence: self.confidence,
            samples_used: samples,
            degree: self.degree,
            delta,
            xi_min: acc.min,
            xi_max: acc.max,
            trace: self.trace,
            scaling: Some(self.scaling),
            seed: self.seed,
            capped,
            mode: self.mode,
            dim: self.dim,
            normalized: self.normalized,
            zero_trace: false,
            max_samples: cap,
        })
    }
}

/// Running sum and extremes; values are pushed in index order.
struct Accumulator {
    sum: f64,
    min: f64,
    max: f64,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            sum: 0.0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        }
    }

    fn push(&mut self, xi: f64) {
        self.sum += xi;
        self.min = self.min.min(xi);
        self.max = self.max.max(xi);
    }
}

/// Fixed-sample estimate of `E(A)`.
pub fn estimate_fixed(
    a: &SymmetricSparseMatrix,
    degree: usize,
    samples: usize,
    scaling: ScalingParams,
    sampler: RademacherSampler,
    confidence: f64,
) -> Result<EntropyEstimate> {
    EntropyEstimator::new(a, degree)
        .scaling(scaling)
        .sampler(sampler)
        .confidence(confidence)
        .fixed(samples)
}

/// Adaptive estimate of `E(A)` with sample cap `max_samples`.
pub fn estimate_adaptive(
    a: &SymmetricSparseMatrix,
    degree: usize,
    confidence: f64,
    scaling: ScalingParams,
    sampler: RademacherSampler,
    max_samples: usize,
) -> Result<EntropyEstimate> {
    EntropyEstimator::new(a, degree)
        .scaling(scaling)
        .sampler(sampler)
        .confidence(confidence)
        .max_samples(max_samples)
        .adaptive()
}

/// Adaptive estimate of `E(A / tr A)` (when `normalize`) or `E(A)`.
///
/// `scaling` bounds the spectrum of `A` as stored; the normalized problem
/// uses `gamma0 / tr(A)` without rewriting the matrix.
pub fn entropy_with_normalization(
    a: &SymmetricSparseMatrix,
    degree: usize,
    confidence: f64,
    scaling: ScalingParams,
    sampler: RademacherSampler,
    max_samples: usize,
    normalize: bool,
) -> Result<EntropyEstimate> {
    EntropyEstimator::new(a, degree)
        .scaling(scaling)
        .sampler(sampler)
        .confidence(confidence)
        .max_samples(max_samples)
        .normalize(normalize)
        .adaptive()
}
