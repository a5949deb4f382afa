//! Whiplash gradient descent.
//!
//! The discrete scheme is
//!
//! ```text
//! x_1     = x_0 - s grad f(x_0)
//! z_k     = x_k - x_{k-1}
//! alpha_k = 1 - sqrt(s) - k s |z_k|^2
//! x_{k+1} = x_k + alpha_k z_k - s grad f(x_k)
//! ```

use nalgebra::DVector;

use super::{Method, OptimizerConfig, OptimizerError, RunResult, Tracker, Verdict};
use crate::functions::CostFunction;

/// Momentum multiplier `alpha_k = 1 - sqrt(s) - k s |z_k|^2`.
///
/// Evaluated left to right so that `alpha_k <= 1 - sqrt(s)` holds exactly in
/// floating point.
pub fn whiplash_damping(step_size: f64, k: usize, z: &DVector<f64>) -> f64 {
    1.0 - step_size.sqrt() - k as f64 * step_size * z.dot(z)
}

pub fn whiplash_descent(f: &dyn CostFunction, cfg: &OptimizerConfig) -> Result<RunResult, OptimizerError> {
    let s = cfg.step_size;
    inertial_descent(f, cfg, Method::Whiplash, |k, z| whiplash_damping(s, k, z))
}

/// Two-point momentum iteration `x_{k+1} = x_k + (alpha_k z_k - s grad f(x_k))`
/// with `x_1 = x_0 - s grad f(x_0)` and a caller-supplied rule for `alpha_k`.
///
/// Whiplash descent and heavy ball are both instances; sharing the loop keeps
/// their floating-point evaluation order identical.
pub fn inertial_descent<A>(
    f: &dyn CostFunction,
    cfg: &OptimizerConfig,
    method: Method,
    alpha_rule: A,
) -> Result<RunResult, OptimizerError>
where
    A: Fn(usize, &DVector<f64>) -> f64,
{
    let mut tracker = Tracker::new(f, cfg, method)?;
    let s = cfg.step_size;
    let dim = cfg.x0.len();

    let mut x_prev = cfg.x0.clone();
    let mut grad = f.gradient(&x_prev);
    let z0 = DVector::zeros(dim);
    if let Some(v) = tracker.observe(0, &x_prev, &z0, alpha_rule(0, &z0), &grad) {
        return Ok(tracker.finish(v));
    }

    let mut x = &x_prev - &grad * s;
    for k in 1..=cfg.max_iters {
        let z = &x - &x_prev;
        let alpha = alpha_rule(k, &z);
        grad = f.gradient(&x);
        if let Some(v) = tracker.observe(k, &x, &z, alpha, &grad) {
            return Ok(tracker.finish(v));
        }
        if k == cfg.max_iters {
            break;
        }
        let step = &z * alpha - &grad * s;
        let x_next = &x + step;
        x_prev = std::mem::replace(&mut x, x_next);
    }
    Ok(tracker.finish(Verdict::BudgetExhausted))
}
