//! Signed log-magnitude numbers and a max-shifted exponential accumulator.

/// A real number stored as `sign * exp(log_abs)`.
///
/// Zero is represented by `log_abs = -inf, sign = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub log_abs: f64,
    pub sign: i8,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        log_abs: f64::NEG_INFINITY,
        sign: 0,
    };
    pub const ONE: SignedLog = SignedLog {
        log_abs: 0.0,
        sign: 1,
    };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLog {
                log_abs: x.abs().ln(),
                sign: if x > 0.0 { 1 } else { -1 },
            }
        }
    }

    pub fn value(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.exp()
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }
}

impl std::ops::Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, rhs: SignedLog) -> SignedLog {
        if self.sign == 0 || rhs.sign == 0 {
            return SignedLog::ZERO;
        }
        SignedLog {
            log_abs: self.log_abs + rhs.log_abs,
            sign: self.sign * rhs.sign,
        }
    }
}

/// Sums signed terms given in log form.
///
/// Returns the sum as `(shift, mantissa)` with `sum = mantissa * exp(shift)`,
/// where `shift` is the largest term magnitude. This keeps the mantissa in
/// `[-n, n]` no matter how far apart the magnitudes are.
pub fn signed_sum(terms: &[SignedLog]) -> (f64, f64) {
    let shift = terms
        .iter()
        .filter(|t| t.sign != 0)
        .map(|t| t.log_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return (shift, 0.0);
    }
    let mantissa = terms
        .iter()
        .filter(|t| t.sign != 0)
        .map(|t| f64::from(t.sign) * (t.log_abs - shift).exp())
        .sum();
    (shift, mantissa)
}

/// `ln cosh(u)` without overflow.
pub fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    if a < 1.0 {
        a.cosh().ln()
    } else {
        a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
    }
}

/// `ln |sinh(u)|` without overflow; `-inf` at zero.
pub fn ln_abs_sinh(u: f64) -> f64 {
    let a = u.abs();
    if a < 1.0 {
        a.sinh().ln()
    } else {
        a + (-(-2.0 * a).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// `ln(1 + e^x)`.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Logistic function `1 / (1 + e^-x)`.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_survives_huge_spread() {
        let terms = [
            SignedLog { log_abs: 800.0, sign: 1 },
            SignedLog { log_abs: 800.0 + 2f64.ln(), sign: -1 },
            SignedLog { log_abs: -800.0, sign: 1 },
        ];
        let (shift, m) = signed_sum(&terms);
        assert_eq!(shift, 800.0 + 2f64.ln());
        // 800 + ln 2 is only representable to about 1e-13.
        assert!((m + 0.5).abs() < 1e-12);
    }

    #[test]
    fn ln_helpers_match_direct_forms() {
        for &u in &[-30.0, -3.0, -0.2, 1e-8, 0.7, 5.0, 40.0] {
            let c: f64 = u;
            assert!((ln_cosh(c) - c.cosh().ln()).abs() < 1e-13 * (1.0 + c.abs()));
            assert!((ln_abs_sinh(c) - c.sinh().abs().ln()).abs() < 1e-13 * (1.0 + c.abs()));
        }
        assert!(ln_cosh(1000.0).is_finite());
        assert!(ln_abs_sinh(-1000.0).is_finite());
        assert!((softplus(3.0) - (1.0 + 3f64.exp()).ln()).abs() < 1e-15);
        assert!((logistic(-2.0) + logistic(2.0) - 1.0).abs() < 1e-15);
    }
}
