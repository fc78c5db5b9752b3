//! Near-optimal sampling points for weighted Hardy spaces on a strip.
//!
//! The points minimize a strictly convex discrete energy made of the strip's
//! Green kernel and the external field `Q = -ln w`. The resulting
//! interpolants come with an a-priori error certificate `exp(-F/n)`.
//!
//! ```
//! use hardy_points::{optimizer::{solve, SolverConfig}, weights::get_weight};
//!
//! let wt = get_weight("w2", 1e-10).unwrap();
//! let sol = solve(&wt, 9, &SolverConfig::default()).unwrap();
//! assert_eq!(sol.points.len(), 9);
//! assert!(sol.energy_report.certificate < 0.03);
//! ```

pub mod approx;
pub mod cli;
pub mod diagnostics;
pub mod energy;
pub mod error;
pub mod functions;
pub mod kernel;
pub mod logspace;
pub mod optimizer;
pub mod points;
pub mod quadrature;
pub mod weights;

pub use error::{Error, Result};
