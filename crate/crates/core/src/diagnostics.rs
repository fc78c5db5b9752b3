//! Error measurement on evaluation grids, the potential lower-bound check,
//! and the computable pieces of the continuous-vs-discrete energy bound.

use crate::approx::{build_sinc, Approximant, Form, SincApproximant};
use crate::energy::{f_d_constant, weighted_potential, EnergyReport};
use crate::error::{Error, Result};
use crate::functions::TestFunction;
use crate::kernel::green_kernel;
use crate::optimizer::{level_crossing, solve, SolverConfig};
use crate::points::PointConfig;
use crate::quadrature::Quadrature;
use crate::weights::{Builtin, Weight};

pub const DEFAULT_GRID_COUNT: usize = 1001;

/// Equispaced evaluation points `x_l = x_1 + (x_last - x_1)/(count - 1) · (l - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    pub x1: f64,
    pub x_last: f64,
    pub count: usize,
    points: Vec<f64>,
}

impl EvalGrid {
    pub fn new(x1: f64, x_last: f64, count: usize) -> Result<Self> {
        if count < 2 || !(x1 < x_last) || !x1.is_finite() || !x_last.is_finite() {
            return Err(Error::InvalidParameter(format!("bad grid ({x1}, {x_last}, {count})")));
        }
        let step = (x_last - x1) / (count - 1) as f64;
        let mut points: Vec<f64> = (0..count).map(|l| x1 + step * l as f64).collect();
        points[count - 1] = x_last;
        Ok(EvalGrid {
            x1,
            x_last,
            count,
            points,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_last - self.x1) / (self.count - 1) as f64
    }
}

/// `(x_1, x_last)` used in the reference experiments for a built-in weight.
pub fn catalog_grid_ends(b: Builtin) -> (f64, f64) {
    match b {
        Builtin::W1 => (-25.0, 25.0),
        Builtin::W2 => (-10.0, 10.0),
        Builtin::W3 => (-3.0, 3.0),
        Builtin::W4 => (-100.0, 100.0),
        Builtin::W5 => (-6.0, 6.0),
        Builtin::W6 => (-40.0, 100.0),
        Builtin::W7 => (-4.5, 5.5),
    }
}

/// Weight level the catalog grid ends were chosen to reach.
pub fn catalog_threshold(b: Builtin) -> f64 {
    match b {
        Builtin::W1 | Builtin::W4 | Builtin::W6 => 1e-20,
        Builtin::W2 => 1e-30,
        Builtin::W3 | Builtin::W5 | Builtin::W7 => 1e-75,
    }
}

/// Grid for a weight: catalog ends for built-ins, otherwise the points where
/// `w` first drops to `threshold` (mirrored if `symmetric`).
pub fn make_grid(wt: &Weight, threshold: f64, symmetric: bool) -> Result<EvalGrid> {
    if let Some(b) = wt.builtin() {
        let (x1, x_last) = catalog_grid_ends(b);
        return EvalGrid::new(x1, x_last, DEFAULT_GRID_COUNT);
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidParameter(format!("grid threshold must lie in (0, 1), got {threshold}")));
    }
    let level = -threshold.ln();
    let limit = 1e6;
    let left = level_crossing(|x| wt.q(-x), level, 1.0, limit)
        .ok_or_else(|| Error::InvalidParameter(format!("weight `{}` never drops to {threshold} on the left", wt.name())))?;
    let x1 = -left;
    let x_last = if symmetric {
        left
    } else {
        level_crossing(|x| wt.q(x), level, 1.0, limit)
            .ok_or_else(|| Error::InvalidParameter(format!("weight `{}` never drops to {threshold} on the right", wt.name())))?
    };
    EvalGrid::new(x1, x_last, DEFAULT_GRID_COUNT)
}

/// `max_l |f(x_l) - approx(x_l)|`.
pub fn sup_error(approx: impl Fn(f64) -> Result<f64>, f: impl Fn(f64) -> f64, grid: &EvalGrid) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid.points() {
        let e = (f(x) - approx(x)?).abs();
        if e.is_nan() {
            return Err(Error::NonFinite(x));
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundCheck {
    pub min_value: f64,
    pub argmin: f64,
    /// `F / (n - 1)`.
    pub bound: f64,
    pub pass: bool,
}

pub const LOWER_BOUND_SLACK: f64 = 1e-8;

/// Checks `U(a*; x) + Q(x) ≥ F/(n-1)` on the grid.
pub fn check_potential_lower_bound(wt: &Weight, a_star: &PointConfig, grid: &EvalGrid) -> Result<LowerBoundCheck> {
    let report = f_d_constant(wt, a_star)?;
    Ok(lower_bound_from_report(wt, a_star, &report, grid))
}

pub fn lower_bound_from_report(wt: &Weight, a_star: &PointConfig, report: &EnergyReport, grid: &EvalGrid) -> LowerBoundCheck {
    let (min_value, argmin) = grid
        .points()
        .iter()
        .map(|&x| (weighted_potential(wt, a_star, x), x))
        .fold((f64::INFINITY, f64::NAN), |acc, v| if v.0 < acc.0 { v } else { acc });
    let bound = report.f_d / (report.n as f64 - 1.0);
    LowerBoundCheck {
        min_value,
        argmin,
        bound,
        pass: min_value >= bound - LOWER_BOUND_SLACK,
    }
}

/// Analytic upper bounds on the kernel integrals, valid when every gap
/// (including the two added at the ends) lies in `[h_sep, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AppendixBounds {
    /// Per-point bound on `s_quad[i]`.
    pub s_bound: Vec<f64>,
    /// Per-interval bound on `t_quad[i]`.
    pub t_bound: Vec<f64>,
    /// `Σ_i [-ln(left gap) - ln(right gap) + 2(1 + c_d)]`.
    pub s_bound_sum: f64,
    /// `Σ_i [-ln(gap) + 3/2 + c_d]`.
    pub t_bound_sum: f64,
    /// Same with the constant `1/2` in place of `3/2`.
    pub t_bound_sum_published: f64,
    /// `(7/2 + 3c_d) n + 3/2 + c_d`, consistent with `t_bound_sum`.
    pub big_c_n: f64,
    /// `(5/2 + 3c_d) n + 1/2 + c_d`.
    pub big_c_n_published: f64,
    /// `-(3n+1) ln h_sep + C_n + e1`; the term involving the continuous
    /// equilibrium measure is not included.
    pub assembled_bound: f64,
    pub assembled_bound_published: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppendixReport {
    pub n: usize,
    pub h_sep: f64,
    pub max_gap: f64,
    /// `-ln tanh(π/(4d))`.
    pub c_d: f64,
    /// `max gap ≤ 1`; bounds are only reported when this holds.
    pub applicable: bool,
    /// Gap used for the two added end points, `min(1, h_sep)`.
    pub end_gap: f64,
    pub quad_order: usize,
    /// `(1/g_L)∫_0^{g_L} K + (1/g_R)∫_0^{g_R} K` for each point.
    pub s_quad: Vec<f64>,
    /// Mean of `K(x - y)` over each square cell, one per augmented interval.
    pub t_quad: Vec<f64>,
    pub s_quad_sum: f64,
    pub t_quad_sum: f64,
    /// `∫ Q dν - ((n-1)/n) Σ Q(a_i)` for the piecewise-uniform measure `ν`.
    pub e1: f64,
    pub bounds: Option<AppendixBounds>,
}

/// `-ln tanh(π/(4d))`.
pub fn c_d(d: f64) -> f64 {
    green_kernel(crate::kernel::StripParam::new(d).expect("positive d"), 1.0)
}

pub fn appendix_quantities(wt: &Weight, a_star: &PointConfig, quad_order: usize) -> Result<AppendixReport> {
    if quad_order < 8 {
        return Err(Error::InvalidParameter(format!("quad_order must be at least 8, got {quad_order}")));
    }
    a_star.require_at_least(2)?;
    a_star.check_separation()?;
    let quad = Quadrature::new(quad_order)?;
    let d = wt.strip();
    let a = a_star.as_slice();
    let n = a.len();
    let gaps = a_star.gaps();
    let h_sep = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    let cd = green_kernel(d, 1.0);
    let applicable = max_gap <= 1.0;
    let end_gap = h_sep.min(1.0);

    // Augmented points a_0 .. a_{n+1}.
    let mut aug = Vec::with_capacity(n + 2);
    aug.push(a[0] - end_gap);
    aug.extend_from_slice(a);
    aug.push(a[n - 1] + end_gap);
    let aug_gaps: Vec<f64> = aug.windows(2).map(|w| w[1] - w[0]).collect();

    let kernel = |t: f64| green_kernel(d, t);
    // (1/g) ∫_0^g K
    let mean_k = |g: f64| quad.integrate_log_left(g, kernel) / g;
    // (1/g²) ∫∫_{[0,g]²} K(x - y) = (2/g²) ∫_0^g (g - t) K(t) dt
    let mean_kk = |g: f64| 2.0 * quad.integrate_log_left(g, |t| (g - t) * kernel(t)) / (g * g);

    let s_quad: Vec<f64> = (1..=n).map(|i| mean_k(aug_gaps[i - 1]) + mean_k(aug_gaps[i])).collect();
    let t_quad: Vec<f64> = aug_gaps.iter().map(|&g| mean_kk(g)).collect();
    let s_quad_sum = s_quad.iter().sum();
    let t_quad_sum = t_quad.iter().sum();

    let nu_q: f64 = aug
        .windows(2)
        .map(|w| quad.integrate(w[0], w[1], |x| wt.q(x)) / (w[1] - w[0]))
        .sum();
    let field: f64 = a.iter().map(|&x| wt.q(x)).sum();
    let e1 = nu_q - (n as f64 - 1.0) / n as f64 * field;

    let bounds = applicable.then(|| {
        let s_bound: Vec<f64> = (1..=n)
            .map(|i| -aug_gaps[i - 1].ln() - aug_gaps[i].ln() + 2.0 * (1.0 + cd))
            .collect();
        let t_bound: Vec<f64> = aug_gaps.iter().map(|g| -g.ln() + 1.5 + cd).collect();
        let s_bound_sum = s_bound.iter().sum();
        let t_bound_sum: f64 = t_bound.iter().sum();
        let t_bound_sum_published = t_bound_sum - (n + 1) as f64;
        let nf = n as f64;
        let big_c_n = (3.5 + 3.0 * cd) * nf + 1.5 + cd;
        let big_c_n_published = (2.5 + 3.0 * cd) * nf + 0.5 + cd;
        let log_h = -(3.0 * nf + 1.0) * h_sep.ln();
        AppendixBounds {
            s_bound,
            t_bound,
            s_bound_sum,
            t_bound_sum,
            t_bound_sum_published,
            big_c_n,
            big_c_n_published,
            assembled_bound: log_h + big_c_n + e1,
            assembled_bound_published: log_h + big_c_n_published + e1,
        }
    });

    Ok(AppendixReport {
        n,
        h_sep,
        max_gap,
        c_d: cd,
        applicable,
        end_gap,
        quad_order,
        s_quad,
        t_quad,
        s_quad_sum,
        t_quad_sum,
        e1,
        bounds,
    })
}

/// One row of an error table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub err_i: f64,
    pub err_ii: f64,
    pub err_sinc: Option<f64>,
    pub certificate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub weight: String,
    pub function: String,
    pub rows: Vec<ErrorRow>,
}

/// Inputs for one error sweep.
#[derive(Debug, Clone)]
pub struct ErrorExperiment {
    pub weight: Weight,
    pub function: TestFunction,
    pub grid: EvalGrid,
    pub solver: SolverConfig,
    pub with_sinc: bool,
    pub epsilon: f64,
}

impl ErrorExperiment {
    /// Catalog grid and default solver. The pairing of `function` with
    /// `weight` is not enforced here; see [`TestFunction::check_pairing`].
    pub fn catalog(weight: Weight, function: TestFunction, epsilon: f64) -> Result<Self> {
        let threshold = weight.builtin().map_or(1e-20, catalog_threshold);
        let grid = make_grid(&weight, threshold, weight.builtin().is_none_or(Builtin::is_even))?;
        Ok(ErrorExperiment {
            weight,
            function,
            grid,
            solver: SolverConfig::default(),
            with_sinc: false,
            epsilon,
        })
    }

    pub fn row(&self, n: usize) -> Result<ErrorRow> {
        let wt = &self.weight;
        let f = |x: f64| self.function.eval(wt, x);
        let sol = solve(wt, n, &self.solver)?;
        let app = Approximant::new(wt, &sol.points, f, Form::I)?;
        let err_i = sup_error(|x| app.eval_formula_i(x), f, &self.grid)?;
        let err_ii = sup_error(|x| app.eval_formula_ii(x), f, &self.grid)?;
        let err_sinc = if self.with_sinc {
            let params = build_sinc(wt.name(), n, self.epsilon)?;
            let sinc = SincApproximant::new(params, f);
            Some(sup_error(|x| Ok(sinc.eval(x)), f, &self.grid)?)
        } else {
            None
        };
        Ok(ErrorRow {
            n,
            err_i,
            err_ii,
            err_sinc,
            certificate: sol.energy_report.certificate,
        })
    }

    /// Rows in the order of `ns`; solves run in parallel.
    pub fn table(&self, ns: &[usize]) -> Result<ErrorTable> {
        use rayon::prelude::*;
        let rows = ns.par_iter().map(|&n| self.row(n)).collect::<Result<Vec<_>>>()?;
        Ok(ErrorTable {
            weight: self.weight.name().to_string(),
            function: self.function.name().to_string(),
            rows,
        })
    }
}
