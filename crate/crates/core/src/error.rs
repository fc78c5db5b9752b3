use thiserror::Error;

use crate::optimizer::IterRecord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`; available: {available}")]
    UnknownName {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },

    #[error("points are not strictly increasing at index {0}")]
    Unordered(usize),

    #[error("points {index} and {} nearly coincide (gap {gap:e})", index + 1)]
    Conditioning { index: usize, gap: f64 },

    #[error("kernel derivative evaluated at its singularity x = 0")]
    KernelSingularity,

    #[error("Hessian is not positive definite at iteration {iteration}")]
    Factorization { iteration: usize },

    #[error("undamped Newton step broke the ordering at iteration {iteration}")]
    OrderingViolated {
        iteration: usize,
        trace: Vec<IterRecord>,
    },

    #[error("damping factor underflowed below 2^-40 at iteration {iteration}")]
    Stall {
        iteration: usize,
        trace: Vec<IterRecord>,
    },

    #[error("Newton did not converge in {iterations} iterations (last step {last_step:e})")]
    NoConvergence {
        iterations: usize,
        last_step: f64,
        trace: Vec<IterRecord>,
    },

    #[error("formula II denominator vanished at x = {0}")]
    ZeroDenominator(f64),

    #[error("non-finite approximant value at x = {0}")]
    NonFinite(f64),

    #[error("(function, weight) pair ({function}, {weight}) is not supported here")]
    Mismatch { function: String, weight: String },
}

impl Error {
    /// Iteration trace attached to solver failures, if any.
    pub fn trace(&self) -> Option<&[IterRecord]> {
        match self {
            Error::OrderingViolated { trace, .. }
            | Error::Stall { trace, .. }
            | Error::NoConvergence { trace, .. } => Some(trace),
            _ => None,
        }
    }

    /// Errors caused by bad input rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownName { .. }
                | Error::InvalidParameter(_)
                | Error::TooFewPoints { .. }
                | Error::Mismatch { .. }
        )
    }
}
