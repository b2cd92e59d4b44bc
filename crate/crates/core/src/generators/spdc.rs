//! Reduced density matrix of a frequency-entangled photon pair.
//!
//! The joint spectral amplitude is
//!
//! ```text
//! f(wi, ws) = c * exp(-(wi + ws - w_cp)^2 tau_p^2 / (8 ln 2)) * sinc(dk(wi, ws) L / 2)
//! dk(wi, ws) = k_i(wi) + k_s(ws) - k_p(wi + ws) + 2 pi / G
//! ```
//!
//! with `sinc(x) = sin(x) / x`, `sinc(0) = 1`. Each propagation constant is a
//! quadratic polynomial `k(w) = b0 + b1 (w - w0) + b2 (w - w0)^2`. On a
//! uniform grid the reduced density matrix is the Gram sum
//! `A[a][b] = dw * sum_c f(w_a, w_c) f(w_b, w_c)`, which is symmetric PSD by
//! construction. Entries below `droptol * max|A|` are dropped.
//!
//! The overall constant `c` cancels under `A / tr(A)`.

use std::f64::consts::{LN_2, PI};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SymmetricSparseMatrix;

/// `k(w) = beta0 + beta1 (w - omega0) + beta2 (w - omega0)^2`, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonDispersion {
    pub omega0: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl PhotonDispersion {
    pub fn k(&self, omega: f64) -> f64 {
        let d = omega - self.omega0;
        self.beta0 + self.beta1 * d + self.beta2 * d * d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dispersion {
    pub idler: PhotonDispersion,
    pub signal: PhotonDispersion,
    pub pump: PhotonDispersion,
}

/// Pump, crystal and grid parameters. All quantities in SI units
/// (seconds, rad/s, metres).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpdcParams {
    pub tau_p: f64,
    pub omega_cp: f64,
    /// `0` switches the phase-matching factor off (`sinc(0) = 1`).
    pub crystal_length: f64,
    pub poling_period: f64,
    pub dispersion: Dispersion,
    pub omega_min: f64,
    pub omega_max: f64,
    pub m: usize,
    /// Replace `f` by the product `g(wi) g(ws)` of two pump-width Gaussians
    /// centred at `w_cp / 2`; the result has rank one.
    pub separable_test_mode: bool,
    /// Proportionality constant of `f`.
    pub amplitude: f64,
    pub droptol: f64,
}

/// Half-width of the default grid around `w_cp / 2`, rad/s.
const DEFAULT_HALF_WIDTH: f64 = 1.2e14;

impl Default for SpdcParams {
    /// Desk-scale toy model: 100 fs pump at 405 nm, 1 mm crystal, 64-point
    /// grid. Group velocities are matched and `beta2` is chosen so that
    /// `dk L / 2` runs from 0 to `2 pi` over the grid; the constant terms
    /// cancel `2 pi / G` at the grid centre.
    fn default() -> Self {
        let omega_cp = 4.65e15;
        let crystal_length = 1e-3;
        let poling_period = 1e-5;
        Self::toy(omega_cp, 1e-13, crystal_length, poling_period, DEFAULT_HALF_WIDTH, 64)
    }
}

impl SpdcParams {
    /// Toy dispersion as in [`Default`], for arbitrary pump and grid.
    pub fn toy(omega_cp: f64, tau_p: f64, crystal_length: f64, poling_period: f64, half_width: f64, m: usize) -> Self {
        let center = 0.5 * omega_cp;
        let beta2 = if crystal_length > 0.0 {
            2.0 * PI / (half_width * half_width * crystal_length)
        } else {
            0.0
        };
        let photon = PhotonDispersion {
            omega0: center,
            beta0: 0.0,
            beta1: 0.0,
            beta2,
        };
        Self {
            tau_p,
            omega_cp,
            crystal_length,
            poling_period,
            dispersion: Dispersion {
                idler: photon,
                signal: photon,
                pump: PhotonDispersion {
                    omega0: omega_cp,
                    beta0: 2.0 * PI / poling_period,
                    beta1: 0.0,
                    beta2: 0.0,
                },
            },
            omega_min: center - half_width,
            omega_max: center + half_width,
            m,
            separable_test_mode: false,
            amplitude: 1.0,
            droptol: 1e-12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        if self.m < 2 {
            return Err(Error::Config(format!("grid size m must be >= 2, got {}", self.m)));
        }
        if !(self.omega_max > self.omega_min) {
            return Err(Error::Config("omega_max must exceed omega_min".into()));
        }
        positive("tau_p", self.tau_p)?;
        positive("poling_period", self.poling_period)?;
        if !(self.crystal_length >= 0.0 && self.crystal_length.is_finite()) {
            return Err(Error::Config(format!(
                "crystal_length must be nonnegative, got {}",
                self.crystal_length
            )));
        }
        if !self.amplitude.is_finite() || self.amplitude == 0.0 {
            return Err(Error::Config(format!("amplitude must be finite and nonzero, got {}", self.amplitude)));
        }
        if !(self.droptol >= 0.0 && self.droptol < 1.0) {
            return Err(Error::Config(format!("droptol must lie in [0, 1), got {}", self.droptol)));
        }
        Ok(())
    }

    pub fn grid_step(&self) -> f64 {
        (self.omega_max - self.omega_min) / (self.m - 1) as f64
    }

    pub fn omega(&self, k: usize) -> f64 {
        self.omega_min + k as f64 * self.grid_step()
    }

    /// Full width at half maximum of the pump envelope, rad/s.
    pub fn pump_fwhm(&self) -> f64 {
        4.0 * 2f64.sqrt() * LN_2 / self.tau_p
    }

    /// Joint spectral amplitude `f(wi, ws)`.
    pub fn amplitude_at(&self, wi: f64, ws: f64) -> f64 {
        let envelope = |s: f64| (-(s * s) * self.tau_p * self.tau_p / (8.0 * LN_2)).exp();
        if self.separable_test_mode {
            let c = 0.5 * self.omega_cp;
            return self.amplitude * envelope(wi - c) * envelope(ws - c);
        }
        let d = &self.dispersion;
        let dk = d.idler.k(wi) + d.signal.k(ws) - d.pump.k(wi + ws) + 2.0 * PI / self.poling_period;
        self.amplitude * envelope(wi + ws - self.omega_cp) * sinc(0.5 * dk * self.crystal_length)
    }

    /// Parses a flat `key = value` file (TOML syntax, `#` comments).
    /// Missing keys take the values of [`SpdcParams::default`]; when the grid
    /// or pump changes, the toy dispersion is rebuilt for it unless
    /// dispersion keys are given explicitly.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let cfg: SpdcConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.into_params()
    }

    pub fn from_config_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_config_str(&text)
    }
}

/// `sin(x) / x` with `sinc(0) = 1`.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpdcConfig {
    m: Option<usize>,
    tau_p: Option<f64>,
    omega_cp: Option<f64>,
    crystal_length: Option<f64>,
    poling_period: Option<f64>,
    omega_min: Option<f64>,
    omega_max: Option<f64>,
    separable: Option<bool>,
    amplitude: Option<f64>,
    droptol: Option<f64>,
    omega0_i: Option<f64>,
    beta0_i: Option<f64>,
    beta1_i: Option<f64>,
    beta2_i: Option<f64>,
    omega0_s: Option<f64>,
    beta0_s: Option<f64>,
    beta1_s: Option<f64>,
    beta2_s: Option<f64>,
    omega0_p: Option<f64>,
    beta0_p: Option<f64>,
    beta1_p: Option<f64>,
    beta2_p: Option<f64>,
}

impl SpdcConfig {
    fn into_params(self) -> Result<SpdcParams> {
        let base = SpdcParams::default();
        let omega_cp = self.omega_cp.unwrap_or(base.omega_cp);
        let center = 0.5 * omega_cp;
        let omega_min = self.omega_min.unwrap_or(center - DEFAULT_HALF_WIDTH);
        let omega_max = self.omega_max.unwrap_or(center + DEFAULT_HALF_WIDTH);
        let half_width = 0.5 * (omega_max - omega_min);
        let toy = SpdcParams::toy(
            omega_cp,
            self.tau_p.unwrap_or(base.tau_p),
            self.crystal_length.unwrap_or(base.crystal_length),
            self.poling_period.unwrap_or(base.poling_period),
            half_width,
            self.m.unwrap_or(base.m),
        );
        let merge = |p: PhotonDispersion, omega0: Option<f64>, b0: Option<f64>, b1: Option<f64>, b2: Option<f64>| {
            PhotonDispersion {
                omega0: omega0.unwrap_or(p.omega0),
                beta0: b0.unwrap_or(p.beta0),
                beta1: b1.unwrap_or(p.beta1),
                beta2: b2.unwrap_or(p.beta2),
            }
        };
        let params = SpdcParams {
            dispersion: Dispersion {
                idler: merge(toy.dispersion.idler, self.omega0_i, self.beta0_i, self.beta1_i, self.beta2_i),
                signal: merge(toy.dispersion.signal, self.omega0_s, self.beta0_s, self.beta1_s, self.beta2_s),
                pump: merge(toy.dispersion.pump, self.omega0_p, self.beta0_p, self.beta1_p, self.beta2_p),
            },
            omega_min,
            omega_max,
            separable_test_mode: self.separable.unwrap_or(false),
            amplitude: self.amplitude.unwrap_or(1.0),
            droptol: self.droptol.unwrap_or(base.droptol),
            ..toy
        };
        params.validate()?;
        Ok(params)
    }
}

/// Generated matrix plus diagnostics.
#[derive(Debug, Clone)]
pub struct SpdcMatrix {
    pub matrix: SymmetricSparseMatrix,
    pub grid_step: f64,
    /// Pump-envelope FWHM measured in grid steps.
    pub fwhm_points: f64,
    pub bandwidth: usize,
    pub sinc_convention: &'static str,
    pub warnings: Vec<String>,
}

/// Minimum number of grid points across the pump FWHM before a warning.
pub const MIN_FWHM_POINTS: f64 = 8.0;

/// Discretized reduced density matrix. Cost is `O(m^3)`; rows are computed
/// in parallel and assembled in row order.
pub fn spdc_density_matrix(params: &SpdcParams) -> Result<SpdcMatrix> {
    params.validate()?;
    let m = params.m;
    let step = params.grid_step();
    let omegas: Vec<f64> = (0..m).map(|k| params.omega(k)).collect();

    let f: Vec<f64> = (0..m * m)
        .into_par_iter()
        .map(|k| params.amplitude_at(omegas[k / m], omegas[k % m]))
        .collect();

    // Upper triangle, row by row.
    let upper: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|a| {
            let fa = &f[a * m..(a + 1) * m];
            (a..m)
                .map(|b| {
                    let fb = &f[b * m..(b + 1) * m];
                    step * fa.iter().zip(fb).map(|(x, y)| x * y).sum::<f64>()
                })
                .collect()
        })
        .collect();

    let max_abs = upper
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let cutoff = params.droptol * max_abs;
    let mut triplets = Vec::new();
    for (a, row) in upper.iter().enumerate() {
        for (offset, &v) in row.iter().enumerate() {
            if v != 0.0 && v.abs() >= cutoff {
                triplets.push((a + offset, a, v));
            }
        }
    }
    let matrix = SymmetricSparseMatrix::from_symmetric_triplets(m, triplets)?;

    let fwhm_points = params.pump_fwhm() / step;
    let mut warnings = Vec::new();
    if fwhm_points < MIN_FWHM_POINTS {
        warnings.push(format!(
            "pump envelope FWHM spans {fwhm_points:.2} grid points (< {MIN_FWHM_POINTS}); the grid under-resolves the pump"
        ));
    }
    if max_abs == 0.0 {
        warnings.push("amplitude vanishes on the whole grid".into());
    }
    Ok(SpdcMatrix {
        bandwidth: matrix.bandwidth(),
        matrix,
        grid_step: step,
        fwhm_points,
        sinc_convention: "sin(x)/x",
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_convention() {
        assert_eq!(sinc(0.0), 1.0);
        assert!((sinc(PI)).abs() < 1e-16);
        assert!((sinc(1e-9) - 1.0).abs() < 1e-17);
    }

    #[test]
    fn default_is_resolved_and_phase_matched_at_centre() {
        let p = SpdcParams::default();
        p.validate().unwrap();
        assert!(p.pump_fwhm() / p.grid_step() >= MIN_FWHM_POINTS);
        let c = 0.5 * p.omega_cp;
        assert!((p.amplitude_at(c, c) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_matrix_is_symmetric_with_warning_on_coarse_grid() {
        let p = SpdcParams {
            m: 12,
            ..SpdcParams::default()
        };
        let out = spdc_density_matrix(&p).unwrap();
        assert_eq!(out.matrix.dim(), 12);
        assert!(!out.warnings.is_empty());
        for (i, j, v) in out.matrix.triplets() {
            assert_eq!(out.matrix.get(j, i), Some(v));
        }
    }

    #[test]
    fn config_parsing() {
        let p = SpdcParams::from_config_str("m = 32\ntau_p = 2e-13 # seconds\nseparable = true\n").unwrap();
        assert_eq!(p.m, 32);
        assert_eq!(p.tau_p, 2e-13);
        assert!(p.separable_test_mode);
        assert_eq!(p.omega_cp, SpdcParams::default().omega_cp);
        assert!(SpdcParams::from_config_str("bogus = 1\n").is_err());
        assert!(SpdcParams::from_config_str("m = 1\n").is_err());
        assert!(SpdcParams::from_config_str("tau_p = -1.0\n").is_err());
        let p = SpdcParams::from_config_str("beta2_p = 3.5e-25\nomega0_i = 2e15\n").unwrap();
        assert_eq!(p.dispersion.pump.beta2, 3.5e-25);
        assert_eq!(p.dispersion.idler.omega0, 2e15);
    }
}
