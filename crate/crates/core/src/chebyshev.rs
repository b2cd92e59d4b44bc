//! Truncated Chebyshev series of `L(x) = x log x` on `[0, x0]`.
//!
//! The coefficients are known in closed form, so no fitting or interpolation
//! is involved. Natural logarithms throughout; entropies are in nats.

use std::f64::consts::E;

use crate::error::{Error, Result};

const INV_E: f64 = 1.0 / E;

/// `x log x` with the continuous extension `L(0) = 0`.
pub fn entropy_function(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("x log x is undefined for x = {x}")));
    }
    Ok(xlogx(x))
}

#[inline]
pub(crate) fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn check_x0(x0: f64) -> Result<()> {
    if x0 > 0.0 && x0.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("interval endpoint x0 must be positive, got {x0}")))
    }
}

/// Degree-`n` truncation `p_n(x) = a_0/2 + sum_{k=1}^n a_k T_k(2x/x0 - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevExpansion {
    degree: usize,
    x0: f64,
    coeffs: Vec<f64>,
}

impl ChebyshevExpansion {
    /// Closed-form coefficients of `x log x` on `[0, x0]`.
    pub fn new(degree: usize, x0: f64) -> Result<Self> {
        check_x0(x0)?;
        let log_quarter = (x0 / 4.0).ln();
        let coeffs = (0..=degree)
            .map(|k| match k {
                0 => x0 * (log_quarter + 1.0),
                1 => 0.25 * x0 * (2.0 * log_quarter + 3.0),
                _ => {
                    let kf = k as f64;
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    sign * x0 / (kf * (kf * kf - 1.0))
                }
            })
            .collect();
        Ok(Self { degree, x0, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// `(a_0, ..., a_n)`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `p_n(x)` by the backward Clenshaw recurrence. Refuses to extrapolate
    /// outside `[0, x0]`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.x0).contains(&x) {
            return Err(Error::domain(format!(
                "x = {x} outside approximation interval [0, {}]",
                self.x0
            )));
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: f64) -> f64 {
        let two_t = 2.0 * (2.0 * x / self.x0 - 1.0);
        // (b_{k+1}, b_{k+2}) while running k = n, ..., 1.
        let (mut b1, mut b2) = (0.0, 0.0);
        for &a in self.coeffs[1..].iter().rev() {
            let b = a + two_t * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        let b0 = self.coeffs[0] + two_t * b1 - b2;
        // p_n = (b_0 - b_2) / 2; the half-weighted a_0 makes this differ from
        // the plain Chebyshev sum a_0 + t b_1 - b_2.
        0.5 * (b0 - b2)
    }
}

/// Free-function form of [`ChebyshevExpansion::new`].
pub fn coefficients(degree: usize, x0: f64) -> Result<ChebyshevExpansion> {
    ChebyshevExpansion::new(degree, x0)
}

/// Free-function form of [`ChebyshevExpansion::evaluate`].
pub fn evaluate_scalar(e: &ChebyshevExpansion, x: f64) -> Result<f64> {
    e.evaluate(x)
}

/// Uniform bound `x0 / (2n(n+1))` on `|L - p_n|` over `[0, x0]`.
pub fn truncation_error_bound(degree: usize, x0: f64) -> Result<f64> {
    if degree == 0 {
        return Err(Error::domain("truncation bound requires degree >= 1"));
    }
    check_x0(x0)?;
    let n = degree as f64;
    Ok(x0 / (2.0 * n * (n + 1.0)))
}

/// Lower and upper envelope of `L` on `[0, x0]`: `min(L(x0), e^-1 sign(e^-1 - x0))`
/// and `max(0, L(x0))`.
fn envelope(x0: f64) -> (f64, f64) {
    let l = xlogx(x0);
    (l.min(INV_E * sign(INV_E - x0)), l.max(0.0))
}

/// Range of `L` on `[0, x0]` divided by `x0`. Minimized at `x0 = 1`.
pub fn spread_function(x0: f64) -> Result<f64> {
    check_x0(x0)?;
    let (lo, hi) = envelope(x0);
    Ok((hi - lo) / x0)
}

/// Bounds on `gamma0 * v^T L(A / gamma0) v` for any sign vector `v` of length
/// `m`, given `sigma(A) ⊆ [0, x0 gamma0]`. Returns `(lower, upper)`.
pub fn quadratic_form_envelope(m: usize, x0: f64, gamma0: f64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::domain("dimension must be positive"));
    }
    check_x0(x0)?;
    if !(gamma0 > 0.0 && gamma0.is_finite()) {
        return Err(Error::domain(format!("gamma0 must be positive, got {gamma0}")));
    }
    let (lo, hi) = envelope(x0);
    let scale = m as f64 * gamma0;
    Ok((scale * lo, scale * hi))
}
