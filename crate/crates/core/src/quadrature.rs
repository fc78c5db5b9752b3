//! Gauss–Legendre helpers, including integrals with a logarithmic
//! singularity at the left endpoint.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};

/// Upper limit of the exponential variable `u` in `t = g e^{-u}`.
const LOG_PANEL_END: usize = 48;

#[derive(Debug, Clone)]
pub struct Quadrature {
    rule: GaussLegendre,
}

impl Quadrature {
    pub fn new(order: usize) -> Result<Self> {
        let order = NonZeroUsize::new(order).ok_or_else(|| Error::InvalidParameter("quadrature order must be positive".into()))?;
        Ok(Quadrature {
            rule: GaussLegendre::new(order),
        })
    }

    pub fn order(&self) -> usize {
        self.rule.degree()
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl FnMut(f64) -> f64) -> f64 {
        self.rule.integrate(a, b, f)
    }

    /// `∫_0^g f(t) dt` for `f` with at most a logarithmic singularity at 0.
    ///
    /// Substitutes `t = g e^{-u}` and integrates over unit panels in `u`;
    /// the integrand becomes `g e^{-u} f(g e^{-u})`, smooth and decaying.
    pub fn integrate_log_left(&self, g: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        (0..LOG_PANEL_END)
            .map(|p| {
                self.rule.integrate(p as f64, (p + 1) as f64, |u| {
                    let t = g * (-u).exp();
                    t * f(t)
                })
            })
            .sum()
    }
}
