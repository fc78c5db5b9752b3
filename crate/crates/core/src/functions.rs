//! Test functions paired with the built-in weights.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::{Error, Result};
use crate::weights::{Builtin, Weight, WeightModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestFunction {
    /// `sech(2x)`
    F1,
    /// `x² / ((π/4)² + x²) · exp(-x²)`
    F2,
    /// `sech((π/2) sinh 2x)`
    F3,
    /// `g1(tanh(x/2))` with `g1(t) = sqrt(1-t²)(1+t²)`
    F4,
    /// `g1(tanh((π/2) sinh x))`
    F5,
    /// `g2(tanh(x/2))` with `g2(t) = (1-t)^(1/2)(1+t)^(3/2)(1+t²)`
    F6,
    /// `g2(tanh((π/2) sinh x))`
    F7,
    /// `f = w` for whatever weight is in use.
    WeightItself,
}

impl TestFunction {
    pub const ALL: [TestFunction; 8] = [
        TestFunction::F1,
        TestFunction::F2,
        TestFunction::F3,
        TestFunction::F4,
        TestFunction::F5,
        TestFunction::F6,
        TestFunction::F7,
        TestFunction::WeightItself,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::F1 => "f1",
            TestFunction::F2 => "f2",
            TestFunction::F3 => "f3",
            TestFunction::F4 => "f4",
            TestFunction::F5 => "f5",
            TestFunction::F6 => "f6",
            TestFunction::F7 => "f7",
            TestFunction::WeightItself => "weight-itself",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "function",
                name: name.to_string(),
                available: Self::ALL.map(|f| f.name()).join(", "),
            })
    }

    /// The weight this function is paired with; `None` for `WeightItself`.
    pub fn paired_weight(self) -> Option<Builtin> {
        Some(match self {
            TestFunction::F1 => Builtin::W1,
            TestFunction::F2 => Builtin::W2,
            TestFunction::F3 => Builtin::W3,
            TestFunction::F4 => Builtin::W4,
            TestFunction::F5 => Builtin::W5,
            TestFunction::F6 => Builtin::W6,
            TestFunction::F7 => Builtin::W7,
            TestFunction::WeightItself => return None,
        })
    }

    /// Default test function for a built-in weight.
    pub fn for_weight(b: Builtin) -> TestFunction {
        match b {
            Builtin::W1 => TestFunction::F1,
            Builtin::W2 => TestFunction::F2,
            Builtin::W3 => TestFunction::F3,
            Builtin::W4 => TestFunction::F4,
            Builtin::W5 => TestFunction::F5,
            Builtin::W6 => TestFunction::F6,
            Builtin::W7 => TestFunction::F7,
        }
    }

    /// Whether `‖f‖ = sup |f/w| ≤ 1` is known for the paired weight.
    pub fn unit_norm(self) -> bool {
        matches!(self, TestFunction::F1 | TestFunction::F3 | TestFunction::WeightItself)
    }

    /// Errors unless `self` may be used with `wt`.
    pub fn check_pairing(self, wt: &Weight) -> Result<()> {
        match (self.paired_weight(), wt.builtin()) {
            (None, _) => Ok(()),
            (Some(p), Some(b)) if p == b => Ok(()),
            _ => Err(Error::Mismatch {
                function: self.name().to_string(),
                weight: wt.name().to_string(),
            }),
        }
    }

    /// Evaluates `f(x)`; `WeightItself` evaluates `wt.w(x)`.
    pub fn eval(self, wt: &Weight, x: f64) -> f64 {
        match self {
            TestFunction::WeightItself => wt.w(x),
            TestFunction::F1 => Builtin::W1.w(x),
            TestFunction::F2 => {
                let x2 = x * x;
                x2 / (FRAC_PI_4 * FRAC_PI_4 + x2) * (-x2).exp()
            }
            TestFunction::F3 => Builtin::W3.w(x),
            TestFunction::F4 => {
                let t = (0.5 * x).tanh();
                Builtin::W4.w(x) * (1.0 + t * t)
            }
            TestFunction::F5 => {
                let t = (FRAC_PI_2 * x.sinh()).tanh();
                Builtin::W5.w(x) * (1.0 + t * t)
            }
            TestFunction::F6 => {
                let t = (0.5 * x).tanh();
                Builtin::W6.w(x) * 4.0 * (1.0 + t * t)
            }
            TestFunction::F7 => {
                let t = (FRAC_PI_2 * x.sinh()).tanh();
                Builtin::W7.w(x) * 4.0 * (1.0 + t * t)
            }
        }
    }
}
