use nalgebra::DVector;

use super::{Method, OptimizerConfig, OptimizerError, RunResult, Tracker, Verdict};
use crate::functions::CostFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamParams {
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        AdamParams {
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl AdamParams {
    fn validate(&self) -> Result<(), OptimizerError> {
        for (name, value) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..1.0).contains(&value) {
                return Err(OptimizerError::BadParameter {
                    name,
                    value,
                    expected: "0 <= beta < 1",
                });
            }
        }
        if !(self.epsilon > 0.0) {
            return Err(OptimizerError::BadParameter {
                name: "epsilon",
                value: self.epsilon,
                expected: "> 0",
            });
        }
        Ok(())
    }
}

/// Bias-corrected Adam with learning rate `cfg.step_size`.
pub fn adam(f: &dyn CostFunction, cfg: &OptimizerConfig, params: AdamParams) -> Result<RunResult, OptimizerError> {
    params.validate()?;
    let mut tracker = Tracker::new(f, cfg, Method::Adam)?;
    let AdamParams { beta1, beta2, epsilon } = params;
    let s = cfg.step_size;
    let dim = cfg.x0.len();

    let mut x = cfg.x0.clone();
    let mut grad = f.gradient(&x);
    let mut m = DVector::zeros(dim);
    let mut v = DVector::zeros(dim);
    if let Some(verdict) = tracker.observe(0, &x, &DVector::zeros(dim), beta1, &grad) {
        return Ok(tracker.finish(verdict));
    }
    let (mut b1_pow, mut b2_pow) = (1.0, 1.0);
    for k in 1..=cfg.max_iters {
        b1_pow *= beta1;
        b2_pow *= beta2;
        m = m * beta1 + &grad * (1.0 - beta1);
        v = v * beta2 + grad.component_mul(&grad) * (1.0 - beta2);
        let m_hat = &m / (1.0 - b1_pow);
        let v_hat = &v / (1.0 - b2_pow);
        let step = m_hat.zip_map(&v_hat, |mh, vh| s * mh / (vh.sqrt() + epsilon));
        let next = &x - step;
        let z = &next - &x;
        x = next;
        grad = f.gradient(&x);
        if let Some(verdict) = tracker.observe(k, &x, &z, beta1, &grad) {
            return Ok(tracker.finish(verdict));
        }
    }
    Ok(tracker.finish(Verdict::BudgetExhausted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::rosenbrock;

    fn v2(a: f64, b: f64) -> DVector<f64> {
        DVector::from_vec(vec![a, b])
    }

    #[test]
    fn zero_gradient_never_moves() {
        let r = adam(&rosenbrock(), &OptimizerConfig::new(1e-3, 100, v2(1.0, 1.0)), AdamParams::default()).unwrap();
        assert!(r.records.iter().all(|rec| rec.x == v2(1.0, 1.0)));
    }

    #[test]
    fn first_step_moves_each_coordinate_by_the_step_size() {
        // k = 1: m_hat = g, v_hat = g^2, so the step is s g / (|g| + eps).
        let s = 1e-3;
        let r = adam(&rosenbrock(), &OptimizerConfig::new(s, 1, v2(5.0, -3.0)), AdamParams::default()).unwrap();
        let g = rosenbrock().gradient(&v2(5.0, -3.0));
        for i in 0..2 {
            let moved = (r.final_x[i] - [5.0, -3.0][i]).abs();
            let oracle = s * g[i].abs() / (g[i].abs() + 1e-8);
            assert!((moved - oracle).abs() < 1e-15, "{moved} vs {oracle}");
            assert!((moved - s).abs() < 1e-12);
        }
    }

    #[test]
    fn parameters_are_validated() {
        let cfg = OptimizerConfig::new(1e-3, 10, v2(0.0, 0.0));
        let bad = AdamParams {
            beta2: 1.0,
            ..AdamParams::default()
        };
        assert!(adam(&rosenbrock(), &cfg, bad).is_err());
        let bad = AdamParams {
            epsilon: 0.0,
            ..AdamParams::default()
        };
        assert!(adam(&rosenbrock(), &cfg, bad).is_err());
    }
}
