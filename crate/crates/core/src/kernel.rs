//! Strip maps and the Green kernel of the strip `|Im z| < d`, restricted to
//! the real axis.
//!
//! With `c = π/(4d)`:
//!
//! ```text
//! T_d(x) = tanh(c x)             S_d(x) = sinh(2c x) / 2
//! K(x)   = -ln |tanh(c x)|
//! K'(x)  = -2c / sinh(2c x)      K''(x) = 4c² cosh(2c x) / sinh²(2c x)
//! ```

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::logspace::SignedLog;

/// Strip half-width `d > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StripParam(f64);

impl StripParam {
    pub fn new(d: f64) -> Result<Self> {
        if d.is_finite() && d > 0.0 {
            Ok(StripParam(d))
        } else {
            Err(Error::InvalidParameter(format!("strip half-width must be positive, got {d}")))
        }
    }

    pub fn d(self) -> f64 {
        self.0
    }

    /// `π/(4d)`, the scale inside `T_d`.
    pub fn rate(self) -> f64 {
        PI / (4.0 * self.0)
    }
}

/// `T_d(x) = tanh(πx/(4d))`.
pub fn t_map(d: StripParam, x: f64) -> f64 {
    (d.rate() * x).tanh()
}

/// `S_d(x) = sinh(πx/(2d)) / 2`. Overflows to `±inf` for huge `|x|`; the
/// barycentric code works with [`crate::logspace::ln_abs_sinh`] instead.
pub fn s_map(d: StripParam, x: f64) -> f64 {
    0.5 * (2.0 * d.rate() * x).sinh()
}

/// `K(x) = -ln|T_d(x)|`, `+inf` at `x = 0`.
pub fn green_kernel(d: StripParam, x: f64) -> f64 {
    kernel_at(d.rate() * x.abs())
}

/// `-ln tanh(y)` for `y >= 0`.
pub(crate) fn kernel_at(y: f64) -> f64 {
    if y == 0.0 {
        f64::INFINITY
    } else if y < 0.5 {
        -y.tanh().ln()
    } else {
        // -ln tanh y = 2 atanh(e^{-2y}); avoids ln(1 - tiny) cancellation.
        2.0 * (-2.0 * y).exp().atanh()
    }
}

/// `K'(x)`; errors at the singularity.
pub fn green_kernel_d1(d: StripParam, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::KernelSingularity);
    }
    Ok(kernel_d1_unchecked(d, x))
}

/// `K''(x)`; errors at the singularity.
pub fn green_kernel_d2(d: StripParam, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::KernelSingularity);
    }
    Ok(kernel_d2_unchecked(d, x))
}

pub(crate) fn kernel_d1_unchecked(d: StripParam, x: f64) -> f64 {
    let two_c = 2.0 * d.rate();
    -two_c / (two_c * x).sinh()
}

pub(crate) fn kernel_d2_unchecked(d: StripParam, x: f64) -> f64 {
    let two_c = 2.0 * d.rate();
    let u = two_c * x;
    // cosh/sinh² = 1/(tanh · sinh), finite for large |u|.
    two_c * two_c / (u.tanh() * u.sinh())
}

/// `ln|Π_j T_d(x - a_j)|` together with the sign of the product.
///
/// Equals `-U(a; x)`. At a sampling point the product vanishes and
/// [`SignedLog::ZERO`] is returned.
pub fn log_blaschke(d: StripParam, points: &[f64], x: f64) -> SignedLog {
    let mut log_abs = 0.0;
    let mut negatives = 0usize;
    for &a in points {
        let t = x - a;
        if t == 0.0 {
            return SignedLog::ZERO;
        }
        if t < 0.0 {
            negatives += 1;
        }
        log_abs -= green_kernel(d, t);
    }
    SignedLog {
        log_abs,
        sign: if negatives.is_multiple_of(2) { 1 } else { -1 },
    }
}
