//! Damped Newton iteration for the discrete energy.
//!
//! The Hessian is strictly diagonally dominant with positive diagonal on
//! every ordered configuration, so a Cholesky solve always succeeds there.
//! Steps are halved until the candidate stays ordered and the energy does
//! not increase; with damping off every step is taken in full.

use nalgebra::DMatrix;

use crate::energy::{energy_unchecked, f_d_constant, gradient_unchecked, hessian_unchecked, to_dvector, EnergyReport};
use crate::error::{Error, Result};
use crate::points::PointConfig;
use crate::weights::Weight;

/// Smallest damping factor tried before giving up.
pub const MIN_DAMPING: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Debug, Clone, PartialEq)]
pub enum InitStrategy {
    Auto,
    Points(PointConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Stop once `max |δ_i|` drops below this.
    pub tol_step: f64,
    pub max_iter: usize,
    pub damping: bool,
    pub init: InitStrategy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol_step: 1e-14,
            max_iter: 200,
            damping: true,
            init: InitStrategy::Auto,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tol_step > 0.0) {
            return Err(Error::InvalidParameter(format!("tol_step must be positive, got {}", self.tol_step)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// One iteration. Failed solves end their trace with the rejected step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterRecord {
    pub iteration: usize,
    /// Energy after the step; NaN for the rejected final step of a failure.
    pub energy: f64,
    /// `max |δ_i|` of the full Newton direction.
    pub step_inf_norm: f64,
    pub damping: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub points: PointConfig,
    pub iterations: usize,
    pub final_step_inf_norm: f64,
    pub energy_report: EnergyReport,
    pub trace: Vec<IterRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonStep {
    pub delta: Vec<f64>,
    pub next: PointConfig,
    pub damping: f64,
}

/// Equispaced start on `[x_L, x_R]` where `Q(x) = max(2, ln n)` on each side.
pub fn initialize(wt: &Weight, n: usize) -> Result<PointConfig> {
    if n < 2 {
        return Err(Error::TooFewPoints { min: 2, got: n });
    }
    let level = (n as f64).ln().max(2.0);
    let limit = 10.0 * n as f64;
    let fallback = n as f64;
    let right = level_crossing(|x| wt.q(x), level, 1.0, limit).unwrap_or(fallback);
    let left = level_crossing(|x| wt.q(-x), level, 1.0, limit).map_or(-fallback, |x| -x);
    Ok(equispaced(left, right, n))
}

fn equispaced(lo: f64, hi: f64, n: usize) -> PointConfig {
    let step = (hi - lo) / (n - 1) as f64;
    let mut pts: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    pts[n - 1] = hi;
    PointConfig::new(pts).expect("equispaced points are ordered")
}

/// Smallest `x in (0, limit]` with `f(x) = level`, assuming `f(0) < level`.
pub(crate) fn level_crossing(f: impl Fn(f64) -> f64, level: f64, start: f64, limit: f64) -> Option<f64> {
    if f(0.0) >= level {
        return None;
    }
    let mut lo = 0.0;
    let mut hi = start;
    while f(hi) < level {
        lo = hi;
        hi *= 2.0;
        if hi > limit {
            if f(limit) < level {
                return None;
            }
            hi = limit;
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn is_feasible(p: &[f64]) -> bool {
    p.iter().all(|x| x.is_finite())
        && p.windows(2).all(|w| {
            let scale = w[0].abs().max(w[1].abs()).max(1.0);
            w[1] - w[0] >= crate::points::MIN_RELATIVE_GAP * scale
        })
}

fn newton_direction(wt: &Weight, a: &[f64], iteration: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let g = gradient_unchecked(wt, a);
    let h: DMatrix<f64> = hessian_unchecked(wt, a);
    let chol = h.cholesky().ok_or(Error::Factorization { iteration })?;
    let delta = chol.solve(&(-to_dvector(&g)));
    Ok((g, delta.iter().copied().collect()))
}

/// A single Newton step from `a`.
pub fn newton_step(wt: &Weight, a: &PointConfig, damping: bool) -> Result<NewtonStep> {
    a.require_at_least(2)?;
    a.check_separation()?;
    step_from(wt, a.as_slice(), damping, 1, &[])
}

fn step_from(wt: &Weight, a: &[f64], damping: bool, iteration: usize, trace: &[IterRecord]) -> Result<NewtonStep> {
    let (_, delta) = newton_direction(wt, a, iteration)?;
    let rejected = |damping: f64| -> Vec<IterRecord> {
        let mut t = trace.to_vec();
        t.push(IterRecord {
            iteration,
            energy: f64::NAN,
            step_inf_norm: delta.iter().fold(0.0f64, |m, s| m.max(s.abs())),
            damping,
        });
        t
    };
    let advance = |alpha: f64| -> Vec<f64> { a.iter().zip(&delta).map(|(x, s)| x + alpha * s).collect() };

    if !damping {
        let next = advance(1.0);
        let next = match PointConfig::new(next) {
            Ok(p) if is_feasible(p.as_slice()) => p,
            _ => {
                return Err(Error::OrderingViolated {
                    iteration,
                    trace: rejected(1.0),
                })
            }
        };
        return Ok(NewtonStep {
            delta,
            next,
            damping: 1.0,
        });
    }

    let e0 = energy_unchecked(wt, a);
    // Energy differences below this are roundoff.
    let slack = 64.0 * f64::EPSILON * e0.abs().max(1.0);
    let mut alpha = 1.0;
    loop {
        let cand = advance(alpha);
        if is_feasible(&cand) {
            let e1 = energy_unchecked(wt, &cand);
            if e1 < e0 || e1 - e0 <= slack {
                return Ok(NewtonStep {
                    delta,
                    next: PointConfig::new(cand).expect("feasible candidate is ordered"),
                    damping: alpha,
                });
            }
        }
        alpha *= 0.5;
        if alpha < MIN_DAMPING {
            return Err(Error::Stall {
                iteration,
                trace: rejected(alpha),
            });
        }
    }
}

/// Minimizes the discrete energy for `n` points.
pub fn solve(wt: &Weight, n: usize, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let start = match &cfg.init {
        InitStrategy::Auto => initialize(wt, n)?,
        InitStrategy::Points(p) => {
            if p.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "initial configuration has {} points, expected {n}",
                    p.len()
                )));
            }
            p.clone()
        }
    };
    solve_from(wt, start, cfg)
}

/// Runs Newton from an explicit starting configuration.
pub fn solve_from(wt: &Weight, start: PointConfig, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    start.require_at_least(2)?;
    start.check_separation()?;
    let mut a = start.into_vec();
    let mut trace = Vec::new();
    let mut last_step = f64::INFINITY;
    for iteration in 1..=cfg.max_iter {
        let step = step_from(wt, &a, cfg.damping, iteration, &trace)?;
        last_step = step.delta.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        a = step.next.into_vec();
        trace.push(IterRecord {
            iteration,
            energy: energy_unchecked(wt, &a),
            step_inf_norm: last_step,
            damping: step.damping,
        });
        if last_step < cfg.tol_step {
            let points = PointConfig::new(a).expect("iterates stay ordered");
            let energy_report = f_d_constant(wt, &points)?;
            return Ok(SolveResult {
                points,
                iterations: iteration,
                final_step_inf_norm: last_step,
                energy_report,
                trace,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iter,
        last_step,
        trace,
    })
}
