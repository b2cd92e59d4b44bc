//! Sample count and error tolerance from Hoeffding's inequality.
//!
//! With `delta` the range of the per-sample values (plus the truncation
//! slack) and `c = m x0 gamma0 / (2 n (n+1))`, the estimate is within
//!
//! ```text
//! tau = c + delta * sqrt(log(2 / (1 - p)) / (2 N))
//! ```
//!
//! of the entropy with probability at least `p`. Choosing `N` so that both
//! addends are equal gives
//!
//! ```text
//! N = 2 n^2 (n+1)^2 delta^2 log(2 / (1 - p)) / (m x0 gamma0)^2.
//! ```

use crate::error::{Error, Result};

fn check_confidence(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("confidence must lie in (0, 1), got {p}")))
    }
}

fn check_common(degree: usize, m: usize, x0: f64, gamma0: f64) -> Result<()> {
    if degree == 0 {
        return Err(Error::domain("degree must be >= 1"));
    }
    if m == 0 {
        return Err(Error::domain("dimension must be positive"));
    }
    if !(x0 > 0.0 && x0.is_finite()) || !(gamma0 > 0.0 && gamma0.is_finite()) {
        return Err(Error::domain(format!("x0 and gamma0 must be positive, got {x0}, {gamma0}")));
    }
    Ok(())
}

/// `m x0 gamma0 / (2 n (n+1))`: the contribution of the polynomial truncation.
pub fn truncation_term(degree: usize, m: usize, x0: f64, gamma0: f64) -> f64 {
    let n = degree as f64;
    m as f64 * x0 * gamma0 / (2.0 * n * (n + 1.0))
}

/// Smallest admissible spread, `m x0 gamma0 / (n (n+1))`.
pub fn delta_floor(degree: usize, m: usize, x0: f64, gamma0: f64) -> f64 {
    2.0 * truncation_term(degree, m, x0, gamma0)
}

/// Real-valued sample count before rounding.
pub fn sample_count_real(delta: f64, degree: usize, p: f64, m: usize, x0: f64, gamma0: f64) -> Result<f64> {
    check_confidence(p)?;
    check_common(degree, m, x0, gamma0)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::domain(format!("delta must be positive, got {delta}")));
    }
    let n = degree as f64;
    let mxg = m as f64 * x0 * gamma0;
    Ok(2.0 * n * n * (n + 1.0) * (n + 1.0) * delta * delta * (2.0 / (1.0 - p)).ln() / (mxg * mxg))
}

/// `ceil` of [`sample_count_real`], at least 1.
pub fn sample_count(delta: f64, degree: usize, p: f64, m: usize, x0: f64, gamma0: f64) -> Result<usize> {
    let n = sample_count_real(delta, degree, p, m, x0, gamma0)?;
    Ok((n.ceil() as usize).max(1))
}

/// Error tolerance `tau` for `samples` draws at confidence `p`.
pub fn error_tolerance(
    delta: f64,
    degree: usize,
    samples: usize,
    p: f64,
    m: usize,
    x0: f64,
    gamma0: f64,
) -> Result<f64> {
    check_confidence(p)?;
    check_common(degree, m, x0, gamma0)?;
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    if !(delta >= 0.0) {
        return Err(Error::domain(format!("delta must be nonnegative, got {delta}")));
    }
    Ok(truncation_term(degree, m, x0, gamma0) + delta * ((2.0 / (1.0 - p)).ln() / (2.0 * samples as f64)).sqrt())
}
