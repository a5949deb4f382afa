//! Whiplash inertial gradient descent.
//!
//! The crate implements the adaptive-damping second-order flow
//!
//! ```text
//! x'' + (1 + t |x'|^2) x' + grad f(x) = 0
//! ```
//!
//! as a continuous-time simulation ([`dynamics`]) and as a discrete optimizer
//! ([`optim::whiplash_descent`]). Baseline optimizers live in [`optim`];
//! [`harness`] runs reproducible Rosenbrock benchmarks.
//!
//! ```
//! use nalgebra::DVector;
//! use whiplash::functions::rosenbrock;
//! use whiplash::optim::{whiplash_descent, OptimizerConfig, Verdict};
//!
//! let cfg = OptimizerConfig::new(1e-5, 20_000, DVector::from_vec(vec![-3.0, 7.0]))
//!     .with_dist_tol(1e-2);
//! let run = whiplash_descent(&rosenbrock(), &cfg).unwrap();
//! assert_eq!(run.verdict, Verdict::ConvergedDist);
//! ```

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod functions;
pub mod harness;
pub mod lyapunov;
pub mod optim;
pub mod spectral;

pub use nalgebra;

/// Iterates with `|x|` above this bound are treated as divergent.
pub const DIVERGENCE_BOUND: f64 = 1e12;
