//! Baseline first-order methods: gradient descent, heavy ball, and the
//! discrete Nesterov scheme.

use nalgebra::DVector;

use super::{inertial_descent, Method, OptimizerConfig, OptimizerError, RunResult, Tracker, Verdict};
use crate::functions::CostFunction;

pub(super) const DEFAULT_BETA: f64 = 0.9;

pub fn gradient_descent(f: &dyn CostFunction, cfg: &OptimizerConfig) -> Result<RunResult, OptimizerError> {
    let mut tracker = Tracker::new(f, cfg, Method::GradientDescent)?;
    let s = cfg.step_size;
    let mut x = cfg.x0.clone();
    let mut z = DVector::zeros(x.len());
    let mut grad = f.gradient(&x);
    for k in 0..=cfg.max_iters {
        if k > 0 {
            let next = &x - &grad * s;
            z = &next - &x;
            x = next;
            grad = f.gradient(&x);
        }
        if let Some(v) = tracker.observe(k, &x, &z, 0.0, &grad) {
            return Ok(tracker.finish(v));
        }
    }
    Ok(tracker.finish(Verdict::BudgetExhausted))
}

/// Constant-momentum heavy ball, `x_{k+1} = x_k + beta (x_k - x_{k-1}) - s grad f(x_k)`.
pub fn heavy_ball(f: &dyn CostFunction, cfg: &OptimizerConfig, beta: f64) -> Result<RunResult, OptimizerError> {
    if !(0.0..1.0).contains(&beta) {
        return Err(OptimizerError::BadParameter {
            name: "beta",
            value: beta,
            expected: "0 <= beta < 1",
        });
    }
    inertial_descent(f, cfg, Method::HeavyBall, |_, _| beta)
}

/// Momentum coefficients `mu_k` for the Nesterov scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentumSchedule {
    /// `mu_k = k / (k + 3)`.
    Standard,
    Constant(f64),
}

impl MomentumSchedule {
    pub fn mu(&self, k: usize) -> f64 {
        match *self {
            MomentumSchedule::Standard => k as f64 / (k as f64 + 3.0),
            MomentumSchedule::Constant(mu) => mu,
        }
    }
}

/// Discrete Nesterov scheme with `epsilon_k = s`:
///
/// ```text
/// theta_0 = y_0 = x_0
/// theta_k = y_{k-1} - s grad f(y_{k-1})
/// y_k     = theta_k + mu_k (theta_k - theta_{k-1})
/// ```
///
/// The reported iterates are the `theta_k`.
pub fn nesterov_discrete(
    f: &dyn CostFunction,
    cfg: &OptimizerConfig,
    schedule: MomentumSchedule,
) -> Result<RunResult, OptimizerError> {
    if let MomentumSchedule::Constant(mu) = schedule {
        if !(0.0..1.0).contains(&mu) {
            return Err(OptimizerError::BadParameter {
                name: "mu",
                value: mu,
                expected: "0 <= mu < 1",
            });
        }
    }
    let mut tracker = Tracker::new(f, cfg, Method::Nesterov)?;
    let s = cfg.step_size;
    let mut theta = cfg.x0.clone();
    let mut y = cfg.x0.clone();
    let mut grad_y = f.gradient(&y);
    let z0 = DVector::zeros(theta.len());
    if let Some(v) = tracker.observe(0, &theta, &z0, schedule.mu(0), &grad_y) {
        return Ok(tracker.finish(v));
    }
    for k in 1..=cfg.max_iters {
        let next = &y - &grad_y * s;
        let z = &next - &theta;
        let mu = schedule.mu(k);
        theta = next;
        if let Some(v) = tracker.observe(k, &theta, &z, mu, &f.gradient(&theta)) {
            return Ok(tracker.finish(v));
        }
        y = &theta + &z * mu;
        grad_y = f.gradient(&y);
    }
    Ok(tracker.finish(Verdict::BudgetExhausted))
}
