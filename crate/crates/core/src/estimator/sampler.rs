use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clenshaw::SignVector;
use crate::error::{Error, Result};
use crate::sparse::SymmetricSparseMatrix;

/// Rademacher vectors indexed by `(seed, index)`.
///
/// Sample `index` is drawn from its own ChaCha8 stream, so any subset of
/// samples can be generated in any order (or in parallel) and reproduce the
/// serial result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RademacherSampler {
    seed: u64,
}

impl RademacherSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sign vector of length `m` for sample `index` (1-based by convention).
    pub fn sample(&self, m: usize, index: u64) -> SignVector {
        let mut out = Vec::with_capacity(m);
        self.fill(index, m, &mut out);
        SignVector::from_signs_unchecked(out)
    }

    pub(crate) fn fill(&self, index: u64, m: usize, out: &mut Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        out.clear();
        while out.len() < m {
            let mut word = rng.next_u64();
            let take = (m - out.len()).min(64);
            for _ in 0..take {
                out.push(if word & 1 == 1 { 1.0 } else { -1.0 });
                word >>= 1;
            }
        }
    }
}

/// Free-function form of [`RademacherSampler::sample`].
pub fn sample_vector(sampler: &RademacherSampler, m: usize, index: u64) -> SignVector {
    sampler.sample(m, index)
}

/// Plain Hutchinson estimate `(1/N) sum_i w_i^T A w_i` over samples `1..=N`.
pub fn hutchinson_trace(a: &SymmetricSparseMatrix, sampler: &RademacherSampler, samples: usize) -> Result<f64> {
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    let m = a.dim();
    let mut w = Vec::with_capacity(m);
    let mut aw = vec![0.0; m];
    let mut total = 0.0;
    for index in 1..=samples as u64 {
        sampler.fill(index, m, &mut w);
        a.apply(&w, &mut aw);
        total += w.iter().zip(&aw).map(|(x, y)| x * y).sum::<f64>();
    }
    Ok(total / samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let s = RademacherSampler::new(42);
        assert_eq!(s.sample(100, 1), s.sample(100, 1));
        assert_ne!(s.sample(64, 1), s.sample(64, 2));
        assert_ne!(s.sample(64, 1), RademacherSampler::new(43).sample(64, 1));
        assert!(s.sample(1000, 7).as_slice().iter().all(|&x| x == 1.0 || x == -1.0));
    }

    #[test]
    fn prefix_stable_across_lengths() {
        let s = RademacherSampler::new(5);
        let long = s.sample(200, 3);
        let short = s.sample(70, 3);
        assert_eq!(&long.as_slice()[..70], short.as_slice());
    }

    #[test]
    fn balanced_entries() {
        let s = RademacherSampler::new(2024);
        let total: f64 = (1..=1000).map(|i| s.sample(1000, i).as_slice().iter().sum::<f64>()).sum();
        let mean = total / 1e6;
        assert!(mean.abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn hutchinson_exact_on_diagonal() {
        let d = SymmetricSparseMatrix::diagonal(&[1.5, 0.0, 2.0, 7.25]).unwrap();
        let s = RademacherSampler::new(9);
        for n in [1, 3, 17] {
            assert_eq!(hutchinson_trace(&d, &s, n).unwrap(), 10.75);
        }
        let z = SymmetricSparseMatrix::zeros(6).unwrap();
        assert_eq!(hutchinson_trace(&z, &s, 4).unwrap(), 0.0);
        assert!(hutchinson_trace(&d, &s, 0).is_err());
    }
}
