//! Barycentric evaluation of the interpolation operator built on optimal
//! points, and the sinc baselines it is compared against.
//!
//! With `λ_k = Π_{j≠k} 1 / tanh(c (a_k - a_j))`, `c = π/(4d)`:
//!
//! ```text
//! (I)  L f(x) = w(x) B(x) Σ_k 2λ_k / sinh(2c(x - a_k)) · f(a_k)/w(a_k)
//! (II) L̃ f(x) = w(x) Σ_k t_k f(a_k)/w(a_k) / Σ_k t_k,   t_k = 2λ_k / sinh(2c(x - a_k))
//! ```
//!
//! where `B(x) = Π_j tanh(c(x - a_j))`. Every product is carried as a
//! [`SignedLog`], so nothing over- or underflows at `n ~ 100`.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use crate::error::{Error, Result};
use crate::kernel::{green_kernel, log_blaschke};
use crate::logspace::{ln_abs_sinh, signed_sum, SignedLog};
use crate::points::PointConfig;
use crate::weights::Weight;

/// Which barycentric form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    I,
    II,
}

impl std::str::FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(Form::I),
            "II" | "ii" | "2" => Ok(Form::II),
            _ => Err(Error::UnknownName {
                kind: "form",
                name: s.to_string(),
                available: "I, II".into(),
            }),
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Form::I => "I",
            Form::II => "II",
        })
    }
}

/// Half-width of the window around a node inside which the node value is
/// returned directly: `1e-12 * max(1, |a_k|)`.
pub fn node_window(a_k: f64) -> f64 {
    1e-12 * a_k.abs().max(1.0)
}

/// `λ_k` in log form. Sign is `(-1)^(n-k)` for 1-based `k`.
pub fn build_lambda(wt: &Weight, points: &PointConfig) -> Result<Vec<SignedLog>> {
    points.check_separation()?;
    let d = wt.strip();
    let a = points.as_slice();
    let n = a.len();
    Ok((0..n)
        .map(|k| {
            let log_abs = (0..n)
                .filter(|&j| j != k)
                .map(|j| green_kernel(d, a[k] - a[j]))
                .sum();
            // a_k - a_j < 0 for the n-1-k points to the right.
            let sign = if (n - 1 - k).is_multiple_of(2) { 1 } else { -1 };
            SignedLog { log_abs, sign }
        })
        .collect())
}

/// An interpolant on fixed sampling points.
#[derive(Debug, Clone)]
pub struct Approximant {
    wt: Weight,
    points: PointConfig,
    log_lambda: Vec<SignedLog>,
    /// `f(a_k)`.
    values: Vec<f64>,
    /// `f(a_k) / w(a_k)`.
    ratios: Vec<f64>,
    form: Form,
}

impl Approximant {
    /// Samples `f` at the points.
    pub fn new(wt: &Weight, points: &PointConfig, f: impl Fn(f64) -> f64, form: Form) -> Result<Self> {
        let values: Vec<f64> = points.as_slice().iter().map(|&x| f(x)).collect();
        Self::from_values(wt, points, values, form)
    }

    pub fn from_values(wt: &Weight, points: &PointConfig, values: Vec<f64>, form: Form) -> Result<Self> {
        if values.len() != points.len() {
            return Err(Error::InvalidParameter(format!(
                "{} sample values for {} points",
                values.len(),
                points.len()
            )));
        }
        let mut ratios = Vec::with_capacity(values.len());
        for (&x, &v) in points.as_slice().iter().zip(&values) {
            let w = wt.w(x);
            if !(w > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("cannot form f/w at node {x}")));
            }
            ratios.push(v / w);
        }
        Ok(Approximant {
            wt: wt.clone(),
            points: points.clone(),
            log_lambda: build_lambda(wt, points)?,
            values,
            ratios,
            form,
        })
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn points(&self) -> &PointConfig {
        &self.points
    }

    pub fn log_lambda(&self) -> &[SignedLog] {
        &self.log_lambda
    }

    pub fn samples(&self) -> &[f64] {
        &self.ratios
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.form {
            Form::I => self.eval_formula_i(x),
            Form::II => self.eval_formula_ii(x),
        }
    }

    fn node_value(&self, x: f64) -> Option<f64> {
        let a = self.points.as_slice();
        let k = match a.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(k) => return Some(self.values[k]),
            Err(k) => k,
        };
        [k.wrapping_sub(1), k]
            .into_iter()
            .filter(|&i| i < a.len())
            .find(|&i| (x - a[i]).abs() < node_window(a[i]))
            .map(|i| self.ratios[i] * self.wt.w(x))
    }

    /// `ln|2λ_k / sinh(2c(x - a_k))|` with sign, for every k.
    fn cauchy_terms(&self, x: f64) -> Vec<SignedLog> {
        let two_c = 2.0 * self.wt.strip().rate();
        self.points
            .as_slice()
            .iter()
            .zip(&self.log_lambda)
            .map(|(&a, lam)| {
                let u = two_c * (x - a);
                SignedLog {
                    log_abs: LN_2 + lam.log_abs - ln_abs_sinh(u),
                    sign: lam.sign * if u > 0.0 { 1 } else { -1 },
                }
            })
            .collect()
    }

    fn weighted(&self, terms: &[SignedLog]) -> Vec<SignedLog> {
        terms
            .iter()
            .zip(&self.ratios)
            .map(|(&t, &r)| t * SignedLog::from_f64(r))
            .collect()
    }

    /// Formula (I).
    pub fn eval_formula_i(&self, x: f64) -> Result<f64> {
        if let Some(v) = self.node_value(x) {
            return Ok(v);
        }
        let blaschke = log_blaschke(self.wt.strip(), self.points.as_slice(), x);
        let terms = self.weighted(&self.cauchy_terms(x));
        let (shift, mantissa) = signed_sum(&terms);
        if mantissa == 0.0 {
            return Ok(0.0);
        }
        let log_mag = -self.wt.q(x) + blaschke.log_abs + shift + mantissa.abs().ln();
        let sign = f64::from(blaschke.sign) * mantissa.signum();
        let v = sign * log_mag.exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(x))
        }
    }

    /// Formula (II).
    pub fn eval_formula_ii(&self, x: f64) -> Result<f64> {
        if let Some(v) = self.node_value(x) {
            return Ok(v);
        }
        let terms = self.cauchy_terms(x);
        let (shift, den) = signed_sum(&terms);
        if den == 0.0 {
            return Err(Error::ZeroDenominator(x));
        }
        let num: f64 = terms
            .iter()
            .zip(&self.ratios)
            .filter(|(t, _)| t.sign != 0)
            .map(|(t, &r)| f64::from(t.sign) * (t.log_abs - shift).exp() * r)
            .sum();
        let v = self.wt.w(x) * (num / den);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(x))
        }
    }
}

/// Variable transformation used by a sinc baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    /// `ψ(x) = tanh(x/2)`.
    Tanh,
    /// `ψ(x) = tanh((π/2) sinh x)`.
    De,
    None,
}

impl Transform {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Transform::Tanh => (0.5 * x).tanh(),
            Transform::De => (FRAC_PI_2 * x.sinh()).tanh(),
            Transform::None => x,
        }
    }
}

/// `x ↦ g(ψ(x))`.
pub fn make_transformed_function<G>(g: G, transform: Transform) -> impl Fn(f64) -> f64
where
    G: Fn(f64) -> f64,
{
    move |x| g(transform.apply(x))
}

/// Step size and truncation of a sinc baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincParams {
    pub transform: Transform,
    pub h: f64,
    pub n_minus: usize,
    pub n_plus: usize,
}

impl SincParams {
    pub fn len(&self) -> usize {
        self.n_minus + self.n_plus + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Sinc parameters for the built-in weights w4–w7.
///
/// Sampling and truncation error orders are balanced; for the uneven
/// weights the split `N₋/N₊` follows the two decay rates. `n` need not be
/// odd: for w4/w5 with even `n` the extra point goes to the right.
pub fn build_sinc(weight_name: &str, n: usize, epsilon: f64) -> Result<SincParams> {
    if n < 3 {
        return Err(Error::TooFewPoints { min: 3, got: n });
    }
    let nf = n as f64;
    let symmetric = |h: f64, transform| {
        let n_minus = (n - 1) / 2;
        SincParams {
            transform,
            h,
            n_minus,
            n_plus: n - 1 - n_minus,
        }
    };
    let params = match weight_name {
        "w4" => symmetric((4.0 * PI * (PI - epsilon) / nf).sqrt(), Transform::Tanh),
        "w5" => symmetric(2.0 / nf * ((PI - 2.0 * epsilon) * nf).ln(), Transform::De),
        "w6" => {
            let d = PI - epsilon;
            let n_minus = n / 4;
            SincParams {
                transform: Transform::Tanh,
                h: (8.0 * PI * d / (3.0 * nf)).sqrt(),
                n_minus,
                n_plus: n - 1 - n_minus,
            }
        }
        "w7" => {
            let d = FRAC_PI_2 - epsilon;
            let h = 2.0 / nf * (d * nf / 1.5f64.sqrt()).ln();
            let n_minus = (0.5 * nf - 1.5f64.ln() / (2.0 * h)).floor().max(0.0) as usize;
            SincParams {
                transform: Transform::De,
                h,
                n_minus: n_minus.min(n - 1),
                n_plus: n - 1 - n_minus.min(n - 1),
            }
        }
        other => {
            return Err(Error::UnknownName {
                kind: "sinc weight",
                name: other.to_string(),
                available: "w4, w5, w6, w7".into(),
            })
        }
    };
    Ok(params)
}

/// `Σ_{k=-N₋}^{N₊} f(kh) sinc(x/h - k)` with the samples precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct SincApproximant {
    pub params: SincParams,
    samples: Vec<f64>,
}

impl SincApproximant {
    pub fn new(params: SincParams, f: impl Fn(f64) -> f64) -> Self {
        let samples = (0..params.len())
            .map(|i| f((i as f64 - params.n_minus as f64) * params.h))
            .collect();
        SincApproximant { params, samples }
    }

    /// Node `k` as an offset from `-N₋`.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.params.n_minus as f64) * self.params.h
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x / self.params.h;
        let nearest = t.round();
        if (t - nearest).abs() < 1e-14 * t.abs().max(1.0) {
            let k = nearest as i64 + self.params.n_minus as i64;
            if k >= 0 && (k as usize) < self.samples.len() {
                return self.samples[k as usize];
            }
        }
        // sinc(t - k) = (-1)^k sin(πt) / (π (t - k))
        let s = (PI * t).sin() / PI;
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &fk)| {
                let k = i as i64 - self.params.n_minus as i64;
                let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                fk * sign * s / (t - k as f64)
            })
            .sum()
    }
}

/// One-shot evaluation, matching the sinc series definition directly.
pub fn eval_sinc(params: &SincParams, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    SincApproximant::new(*params, f).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::get_weight;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn direct_lambda(d: f64, a: &[f64], k: usize) -> f64 {
        let c = PI / (4.0 * d);
        a.iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &aj)| 1.0 / (c * (a[k] - aj)).tanh())
            .product()
    }

    #[test]
    fn lambda_cases() {
        let wt = get_weight("w1", 1e-10).unwrap();
        let one = build_lambda(&wt, &PointConfig::new(vec![0.3]).unwrap()).unwrap();
        assert_eq!(one, vec![SignedLog::ONE]);

        let d = crate::kernel::StripParam::new(FRAC_PI_4).unwrap();
        let flat = Weight::from_fns("f", d, |_| 1.0, |_| 0.0, |_| 0.0, |_| 1.0);
        let t = 0.4;
        let lam = build_lambda(&flat, &PointConfig::new(vec![-t, t]).unwrap()).unwrap();
        assert_relative_eq!(lam[0].value(), -1.0 / (2.0 * t).tanh(), max_relative = 1e-14);
        assert_relative_eq!(lam[1].value(), 1.0 / (2.0 * t).tanh(), max_relative = 1e-14);

        let a = [-1.7, -0.9, -0.2, 0.4, 0.45, 1.9];
        let lam = build_lambda(&flat, &PointConfig::new(a.to_vec()).unwrap()).unwrap();
        for k in 0..a.len() {
            assert_relative_eq!(lam[k].value(), direct_lambda(FRAC_PI_4, &a, k), max_relative = 1e-12);
            assert_eq!(lam[k].sign, if (a.len() - 1 - k) % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn sinc_parameters() {
        let p = build_sinc("w4", 101, 1e-10).unwrap();
        assert_relative_eq!(p.h, (4.0 * PI * (PI - 1e-10) / 101.0).sqrt(), max_relative = 1e-15);
        assert!((p.h - 0.625_200_305).abs() < 1e-9, "{}", p.h);
        assert_eq!((p.n_minus, p.n_plus), (50, 50));
        let p6 = build_sinc("w6", 101, 1e-10).unwrap();
        assert_eq!((p6.n_minus, p6.n_plus), (25, 75));
        let p7 = build_sinc("w7", 101, 1e-10).unwrap();
        assert_eq!(p7.len(), 101);
        assert!(p7.n_minus < 50);
        assert!(build_sinc("w1", 11, 1e-10).is_err());
        assert!(build_sinc("w4", 2, 1e-10).is_err());
        let even = build_sinc("w5", 10, 1e-10).unwrap();
        assert_eq!(even.len(), 10);
    }

    #[test]
    fn sinc_cardinal_and_zero() {
        let p = build_sinc("w4", 21, 1e-10).unwrap();
        let f = |x: f64| (1.0 + x * x).recip();
        let s = SincApproximant::new(p, f);
        for i in 0..p.len() {
            let x = s.node(i);
            assert_eq!(s.eval(x), f(x));
        }
        assert_eq!(eval_sinc(&p, |_| 0.0, 0.37), 0.0);
    }

    #[test]
    fn transforms() {
        assert_eq!(Transform::Tanh.apply(0.0), 0.0);
        assert_eq!(Transform::De.apply(0.0), 0.0);
        let g1 = |t: f64| (1.0 - t * t).sqrt() * (1.0 + t * t);
        let f4 = make_transformed_function(g1, Transform::Tanh);
        for x in [-3.0f64, -0.4, 0.0, 1.2, 7.0] {
            let th = (0.5 * x).tanh();
            let expect = (1.0 / (0.5 * x).cosh()) * (1.0 + th * th);
            assert_relative_eq!(f4(x), expect, max_relative = 1e-12);
        }
        let g2 = |t: f64| (1.0 - t).sqrt() * (1.0 + t).powf(1.5) * (1.0 + t * t);
        let f6 = make_transformed_function(g2, Transform::Tanh);
        let w6 = get_weight("w6", 1e-10).unwrap();
        for x in [-3.0f64, 0.0, 0.5, 4.0] {
            let th = (0.5 * x).tanh();
            assert_relative_eq!(f6(x), w6.w(x) * 4.0 * (1.0 + th * th), max_relative = 1e-12);
        }
    }

    #[test]
    fn node_exactness_and_far_field() {
        let wt = get_weight("w2", 1e-10).unwrap();
        let pts = PointConfig::new(vec![-1.6, -0.9, -0.3, 0.2, 0.8, 1.5]).unwrap();
        let f = |x: f64| (x - 0.1).cos() * (-x * x).exp();
        for form in [Form::I, Form::II] {
            let app = Approximant::new(&wt, &pts, f, form).unwrap();
            for &a in pts.as_slice() {
                assert_eq!(app.eval(a).unwrap(), f(a));
                let near = a + 1e-14;
                assert!((app.eval(near).unwrap() - f(a)).abs() < 1e-12);
            }
            assert!(app.eval(50.0).unwrap().is_finite());
            assert!(app.eval(-50.0).unwrap().is_finite());
        }
    }

    #[test]
    fn formula_ii_reproduces_weight() {
        let wt = get_weight("w1", 1e-10).unwrap();
        let pts = PointConfig::new(vec![-2.0, -1.1, -0.2, 0.6, 1.4, 2.2]).unwrap();
        let app = Approximant::new(&wt, &pts, |x| wt.w(x), Form::II).unwrap();
        for x in [-3.3, -0.77, 0.01, 0.9, 5.0] {
            assert_relative_eq!(app.eval(x).unwrap(), wt.w(x), max_relative = 1e-14);
        }
    }

    #[test]
    fn form_parsing() {
        assert_eq!("I".parse::<Form>().unwrap(), Form::I);
        assert_eq!("II".parse::<Form>().unwrap(), Form::II);
        assert!("III".parse::<Form>().is_err());
    }
}
