//! The discrete energy
//!
//! ```text
//! I(a) = Σ_{i≠j} K(a_i - a_j) + (2(n-1)/n) Σ_i Q(a_i)
//! ```
//!
//! with its gradient, Hessian, the potential `U(a; x) = Σ_i K(x - a_i)`, and
//! the constant `F = I(a*) - ((n-1)/n) Σ Q(a*_i)` whose exponential
//! `exp(-F/n)` bounds the worst-case interpolation error.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::kernel::{green_kernel, kernel_d1_unchecked, kernel_d2_unchecked};
use crate::points::PointConfig;
use crate::weights::Weight;

fn field_factor(n: usize) -> f64 {
    2.0 * (n as f64 - 1.0) / n as f64
}

fn checked(a: &PointConfig) -> Result<()> {
    a.require_at_least(2)?;
    a.check_separation()
}

/// Pairwise part `Σ_{i≠j} K(a_i - a_j)`; depends on differences only.
pub fn kernel_sum(wt: &Weight, a: &PointConfig) -> Result<f64> {
    checked(a)?;
    Ok(kernel_sum_unchecked(wt, a.as_slice()))
}

fn kernel_sum_unchecked(wt: &Weight, a: &[f64]) -> f64 {
    let d = wt.strip();
    let mut s = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            s += green_kernel(d, a[j] - a[i]);
        }
    }
    2.0 * s
}

pub fn energy_value(wt: &Weight, a: &PointConfig) -> Result<f64> {
    checked(a)?;
    Ok(energy_unchecked(wt, a.as_slice()))
}

pub(crate) fn energy_unchecked(wt: &Weight, a: &[f64]) -> f64 {
    let field: f64 = a.iter().map(|&x| wt.q(x)).sum();
    kernel_sum_unchecked(wt, a) + field_factor(a.len()) * field
}

/// `∂I/∂a_l = 2 Σ_{j≠l} K'(a_l - a_j) + (2(n-1)/n) Q'(a_l)`.
pub fn energy_gradient(wt: &Weight, a: &PointConfig) -> Result<Vec<f64>> {
    checked(a)?;
    Ok(gradient_unchecked(wt, a.as_slice()))
}

pub(crate) fn gradient_unchecked(wt: &Weight, a: &[f64]) -> Vec<f64> {
    let d = wt.strip();
    let n = a.len();
    let ff = field_factor(n);
    let mut g: Vec<f64> = a.iter().map(|&x| ff * wt.q1(x)).collect();
    for l in 0..n {
        for j in l + 1..n {
            // K' is odd.
            let k1 = 2.0 * kernel_d1_unchecked(d, a[l] - a[j]);
            g[l] += k1;
            g[j] -= k1;
        }
    }
    g
}

/// Dense Hessian: diagonal `2 Σ_{j≠l} K''(a_l - a_j) + (2(n-1)/n) Q''(a_l)`,
/// off-diagonal `-2 K''(a_l - a_k)`.
pub fn energy_hessian(wt: &Weight, a: &PointConfig) -> Result<DMatrix<f64>> {
    checked(a)?;
    Ok(hessian_unchecked(wt, a.as_slice()))
}

pub(crate) fn hessian_unchecked(wt: &Weight, a: &[f64]) -> DMatrix<f64> {
    let d = wt.strip();
    let n = a.len();
    let ff = field_factor(n);
    let mut h = DMatrix::zeros(n, n);
    for l in 0..n {
        h[(l, l)] = ff * wt.q2(a[l]);
    }
    for l in 0..n {
        for k in l + 1..n {
            let k2 = 2.0 * kernel_d2_unchecked(d, a[l] - a[k]);
            h[(l, k)] = -k2;
            h[(k, l)] = -k2;
            h[(l, l)] += k2;
            h[(k, k)] += k2;
        }
    }
    h
}

pub(crate) fn to_dvector(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}

/// `U(a; x) = Σ_i K(x - a_i)`; `+inf` at a sampling point.
pub fn potential(wt: &Weight, a: &PointConfig, x: f64) -> f64 {
    let d = wt.strip();
    a.as_slice().iter().map(|&ai| green_kernel(d, x - ai)).sum()
}

/// `U(a; x) + Q(x)`, the quantity bounded below at the minimizer.
pub fn weighted_potential(wt: &Weight, a: &PointConfig, x: f64) -> f64 {
    potential(wt, a, x) + wt.q(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub n: usize,
    pub energy: f64,
    pub grad_inf_norm: f64,
    pub f_d: f64,
    /// `exp(-f_d / n)`.
    pub certificate: f64,
}

/// Evaluates `F` and the certificate at (near-)stationary points. The
/// gradient norm is recorded, not enforced.
pub fn f_d_constant(wt: &Weight, a_star: &PointConfig) -> Result<EnergyReport> {
    checked(a_star)?;
    let a = a_star.as_slice();
    let n = a.len();
    let energy = energy_unchecked(wt, a);
    let field: f64 = a.iter().map(|&x| wt.q(x)).sum();
    let f_d = energy - (n as f64 - 1.0) / n as f64 * field;
    let grad_inf_norm = gradient_unchecked(wt, a).iter().fold(0.0f64, |m, g| m.max(g.abs()));
    Ok(EnergyReport {
        n,
        energy,
        grad_inf_norm,
        f_d,
        certificate: (-f_d / n as f64).exp(),
    })
}
