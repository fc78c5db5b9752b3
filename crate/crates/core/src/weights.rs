//! Weight functions `w` on the real axis and their external fields
//! `Q = -ln w`, `Q'`, `Q''`.
//!
//! The seven built-in weights cover the single- and double-exponential
//! decay regimes plus two uneven variants. Each comes with the strip
//! half-width `d` on which it is admissible, shrunk by a small `epsilon`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::StripParam;
use crate::logspace::{ln_cosh, logistic, softplus};

pub const DEFAULT_EPSILON: f64 = 1e-10;

/// The analytic data a weight supplies.
///
/// Implementations must keep `q`, `q1`, `q2` finite and overflow-safe on
/// the range where sampling points can live; `w` may underflow to zero.
pub trait WeightModel: Send + Sync {
    fn w(&self, x: f64) -> f64 {
        (-self.q(x)).exp()
    }
    fn q(&self, x: f64) -> f64;
    fn q1(&self, x: f64) -> f64;
    fn q2(&self, x: f64) -> f64;
}

/// A named weight together with its strip half-width.
#[derive(Clone)]
pub struct Weight {
    name: String,
    strip: StripParam,
    builtin: Option<Builtin>,
    model: Arc<dyn WeightModel>,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("name", &self.name)
            .field("d", &self.strip.d())
            .finish()
    }
}

impl Weight {
    /// Wraps a user-supplied model.
    pub fn new(name: impl Into<String>, strip: StripParam, model: impl WeightModel + 'static) -> Self {
        Weight {
            name: name.into(),
            strip,
            builtin: None,
            model: Arc::new(model),
        }
    }

    /// Builds a weight from plain closures for `w, Q, Q', Q''`.
    pub fn from_fns<W, Q, Q1, Q2>(name: impl Into<String>, strip: StripParam, w: W, q: Q, q1: Q1, q2: Q2) -> Self
    where
        W: Fn(f64) -> f64 + Send + Sync + 'static,
        Q: Fn(f64) -> f64 + Send + Sync + 'static,
        Q1: Fn(f64) -> f64 + Send + Sync + 'static,
        Q2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(
            name,
            strip,
            FnWeight {
                w: Box::new(w),
                q: Box::new(q),
                q1: Box::new(q1),
                q2: Box::new(q2),
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn strip(&self) -> StripParam {
        self.strip
    }

    pub fn d(&self) -> f64 {
        self.strip.d()
    }

    /// The catalog entry this weight came from, if any.
    pub fn builtin(&self) -> Option<Builtin> {
        self.builtin
    }

    pub fn w(&self, x: f64) -> f64 {
        self.model.w(x)
    }

    pub fn q(&self, x: f64) -> f64 {
        self.model.q(x)
    }

    pub fn q1(&self, x: f64) -> f64 {
        self.model.q1(x)
    }

    pub fn q2(&self, x: f64) -> f64 {
        self.model.q2(x)
    }
}

struct FnWeight {
    w: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    q: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    q1: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    q2: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl WeightModel for FnWeight {
    fn w(&self, x: f64) -> f64 {
        (self.w)(x)
    }
    fn q(&self, x: f64) -> f64 {
        (self.q)(x)
    }
    fn q1(&self, x: f64) -> f64 {
        (self.q1)(x)
    }
    fn q2(&self, x: f64) -> f64 {
        (self.q2)(x)
    }
}

/// Built-in weights.
///
/// | name | `w(x)` | `d` |
/// |------|--------|-----|
/// | w1 | `sech(2x)` | `π/4 - ε` |
/// | w2 | `exp(-x²)` | `π/4 - ε` |
/// | w3 | `sech((π/2) sinh 2x)` | `π/4 - ε` |
/// | w4 | `sech(x/2)` | `π - ε` |
/// | w5 | `sech((π/2) sinh x)` | `π/2 - ε` |
/// | w6 | `(1+eˣ)^(-1/2) (1+e⁻ˣ)^(-3/2)` | `π - ε` |
/// | w7 | w6 composed with `π sinh x` | `π/2 - ε` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    W1,
    W2,
    W3,
    W4,
    W5,
    W6,
    W7,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::W1,
        Builtin::W2,
        Builtin::W3,
        Builtin::W4,
        Builtin::W5,
        Builtin::W6,
        Builtin::W7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::W1 => "w1",
            Builtin::W2 => "w2",
            Builtin::W3 => "w3",
            Builtin::W4 => "w4",
            Builtin::W5 => "w5",
            Builtin::W6 => "w6",
            Builtin::W7 => "w7",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "weight",
                name: name.to_string(),
                available: catalog_names().join(", "),
            })
    }

    /// Strip half-width before subtracting epsilon.
    pub fn nominal_d(self) -> f64 {
        match self {
            Builtin::W1 | Builtin::W2 | Builtin::W3 => FRAC_PI_4,
            Builtin::W4 | Builtin::W6 => PI,
            Builtin::W5 | Builtin::W7 => FRAC_PI_2,
        }
    }

    pub fn is_even(self) -> bool {
        !matches!(self, Builtin::W6 | Builtin::W7)
    }
}

impl WeightModel for Builtin {
    fn w(&self, x: f64) -> f64 {
        match self {
            Builtin::W1 => 1.0 / (2.0 * x).cosh(),
            Builtin::W2 => (-x * x).exp(),
            Builtin::W3 => 1.0 / (FRAC_PI_2 * (2.0 * x).sinh()).cosh(),
            Builtin::W4 => 1.0 / (0.5 * x).cosh(),
            Builtin::W5 => 1.0 / (FRAC_PI_2 * x.sinh()).cosh(),
            Builtin::W6 => uneven_w(x),
            Builtin::W7 => uneven_w(PI * x.sinh()),
        }
    }

    fn q(&self, x: f64) -> f64 {
        match self {
            Builtin::W1 => ln_cosh(2.0 * x),
            Builtin::W2 => x * x,
            Builtin::W3 => ln_cosh(FRAC_PI_2 * (2.0 * x).sinh()),
            Builtin::W4 => ln_cosh(0.5 * x),
            Builtin::W5 => ln_cosh(FRAC_PI_2 * x.sinh()),
            Builtin::W6 => uneven_q(x),
            Builtin::W7 => uneven_q(PI * x.sinh()),
        }
    }

    fn q1(&self, x: f64) -> f64 {
        match self {
            Builtin::W1 => 2.0 * (2.0 * x).tanh(),
            Builtin::W2 => 2.0 * x,
            Builtin::W3 => {
                let u = FRAC_PI_2 * (2.0 * x).sinh();
                PI * (2.0 * x).cosh() * u.tanh()
            }
            Builtin::W4 => 0.5 * (0.5 * x).tanh(),
            Builtin::W5 => {
                let u = FRAC_PI_2 * x.sinh();
                FRAC_PI_2 * x.cosh() * u.tanh()
            }
            Builtin::W6 => uneven_q1(x),
            Builtin::W7 => uneven_q1(PI * x.sinh()) * PI * x.cosh(),
        }
    }

    fn q2(&self, x: f64) -> f64 {
        match self {
            Builtin::W1 => 4.0 * sech2(2.0 * x),
            Builtin::W2 => 2.0,
            Builtin::W3 => {
                let u = FRAC_PI_2 * (2.0 * x).sinh();
                let du = PI * (2.0 * x).cosh();
                let ddu = 2.0 * PI * (2.0 * x).sinh();
                sech2(u) * du * du + u.tanh() * ddu
            }
            Builtin::W4 => 0.25 * sech2(0.5 * x),
            Builtin::W5 => {
                let u = FRAC_PI_2 * x.sinh();
                let du = FRAC_PI_2 * x.cosh();
                let ddu = FRAC_PI_2 * x.sinh();
                sech2(u) * du * du + u.tanh() * ddu
            }
            Builtin::W6 => uneven_q2(x),
            Builtin::W7 => {
                let v = PI * x.sinh();
                let dv = PI * x.cosh();
                let ddv = PI * x.sinh();
                uneven_q2(v) * dv * dv + uneven_q1(v) * ddv
            }
        }
    }
}

fn sech2(u: f64) -> f64 {
    let s = 1.0 / u.cosh();
    s * s
}

// (1+e^v)^(-1/2) (1+e^-v)^(-3/2) and its field.
fn uneven_w(v: f64) -> f64 {
    (-uneven_q(v)).exp()
}

fn uneven_q(v: f64) -> f64 {
    0.5 * softplus(v) + 1.5 * softplus(-v)
}

fn uneven_q1(v: f64) -> f64 {
    0.5 * logistic(v) - 1.5 * logistic(-v)
}

fn uneven_q2(v: f64) -> f64 {
    2.0 * logistic(v) * logistic(-v)
}

pub fn catalog_names() -> Vec<&'static str> {
    Builtin::ALL.iter().map(|b| b.name()).collect()
}

/// Looks up a built-in weight; its strip is `nominal_d - epsilon`.
pub fn get_weight(name: &str, epsilon: f64) -> Result<Weight> {
    let builtin = Builtin::from_name(name)?;
    builtin_weight(builtin, epsilon)
}

pub fn builtin_weight(builtin: Builtin, epsilon: f64) -> Result<Weight> {
    if !(epsilon > 0.0 && epsilon < 0.1) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 0.1), got {epsilon}")));
    }
    Ok(Weight {
        name: builtin.name().to_string(),
        strip: StripParam::new(builtin.nominal_d() - epsilon)?,
        builtin: Some(builtin),
        model: Arc::new(builtin),
    })
}

/// Numeric spot-check of log-concavity and derivative consistency.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// `max |Q + ln w| / max(1, |Q|)` over grid points where `w > 0`.
    pub max_log_mismatch: f64,
    pub min_q2: f64,
    pub argmin_q2: f64,
    /// Largest relative mismatch of `Q'` and `Q''` against central differences.
    pub max_derivative_mismatch: f64,
    pub max_w: f64,
    pub pass: bool,
}

pub const VALIDATION_TOLERANCE: f64 = 1e-5;

pub fn validate_weight(wt: &Weight, grid: &[f64]) -> ValidationReport {
    let mut max_log_mismatch: f64 = 0.0;
    let mut min_q2 = f64::INFINITY;
    let mut argmin_q2 = f64::NAN;
    let mut max_der: f64 = 0.0;
    let mut max_w: f64 = 0.0;
    for &x in grid {
        let q = wt.q(x);
        let w = wt.w(x);
        max_w = max_w.max(w);
        if w > 0.0 && q.is_finite() {
            max_log_mismatch = max_log_mismatch.max((q + w.ln()).abs() / q.abs().max(1.0));
        }
        let q2 = wt.q2(x);
        if q2 < min_q2 {
            min_q2 = q2;
            argmin_q2 = x;
        }
        let h = 1e-5 * x.abs().max(1.0);
        let fd1 = (wt.q(x + h) - wt.q(x - h)) / (2.0 * h);
        let fd2 = (wt.q1(x + h) - wt.q1(x - h)) / (2.0 * h);
        let q1 = wt.q1(x);
        max_der = max_der
            .max((q1 - fd1).abs() / q1.abs().max(1.0))
            .max((q2 - fd2).abs() / q2.abs().max(1.0));
    }
    let pass = min_q2 > 0.0
        && max_der < VALIDATION_TOLERANCE
        && max_log_mismatch < 1e-12
        && max_w <= 1.0 + 1e-15;
    ValidationReport {
        max_log_mismatch,
        min_q2,
        argmin_q2,
        max_derivative_mismatch: max_der,
        max_w,
        pass,
    }
}
