//! Runtime checks that the energy `W = |v|^2/2 + f - f*` does not increase
//! along damped trajectories.
//!
//! The exact flow satisfies `dW/dt = -gamma |v|^2 <= 0`. A fixed-step
//! integrator only does so up to a discretization error, so each adjacent
//! pair of samples is allowed an increase of
//! `eps = C * dt * (1 + |v|^2)`, where `C` is calibrated on an undamped
//! quadratic at the trajectory's step size.

use nalgebra::{DMatrix, DVector};

use crate::dynamics::{self, ContinuousState, DampingLaw, Trajectory};
use crate::functions::quadratic;

/// Steps used by [`LyapunovTolerance::calibrate`].
pub const CALIBRATION_STEPS: usize = 10_000;

/// Headroom multiplied onto the worst calibration ratio.
const CALIBRATION_SAFETY: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovTolerance {
    pub c: f64,
}

impl LyapunovTolerance {
    /// Calibrates `C` from `CALIBRATION_STEPS` undamped symplectic Euler steps
    /// on the quadratic whose Hessian is Rosenbrock's Hessian at its
    /// minimizer, started from `x = (1, 0)` at rest.
    ///
    /// `C` is twice the largest observed `max(0, W_{k+1} - W_k) / (h (1 + |v_k|^2))`.
    pub fn calibrate(h: f64) -> Self {
        let a = DMatrix::from_row_slice(2, 2, &[802.0, -400.0, -400.0, 200.0]);
        let q = quadratic(a, DVector::zeros(2)).expect("calibration matrix is SPD");
        let law = DampingLaw::Constant { gamma: 0.0 };
        let mut state = ContinuousState::new(0.0, DVector::from_vec(vec![1.0, 0.0]), DVector::zeros(2));
        let mut w = dynamics::lyapunov_w(&state, &q).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..CALIBRATION_STEPS {
            let next = dynamics::step_symplectic_euler(&state, h, &q, &law)
                .expect("undamped quadratic stays bounded for stable h");
            let w_next = dynamics::lyapunov_w(&next, &q).unwrap();
            let ratio = (w_next - w).max(0.0) / (h * (1.0 + state.v.norm_squared()));
            worst = worst.max(ratio);
            state = next;
            w = w_next;
        }
        LyapunovTolerance {
            c: CALIBRATION_SAFETY * worst,
        }
    }

    pub fn epsilon(&self, dt: f64, v_sq: f64) -> f64 {
        self.c * dt * (1.0 + v_sq)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Index of the later sample of the offending pair.
    pub index: usize,
    pub increase: f64,
    pub tolerance: f64,
}

/// Every adjacent sample pair where `W` rose by more than the tolerance
/// calibrated for the trajectory's step size.
pub fn monotonicity_report(traj: &Trajectory) -> Vec<Violation> {
    let tol = LyapunovTolerance::calibrate(traj.meta.step);
    monotonicity_report_with(traj, &tol)
}

pub fn monotonicity_report_with(traj: &Trajectory, tol: &LyapunovTolerance) -> Vec<Violation> {
    traj.samples
        .windows(2)
        .enumerate()
        .filter_map(|(i, pair)| {
            let (a, b) = (&pair[0], &pair[1]);
            let (wa, wb) = (a.lyapunov?, b.lyapunov?);
            let v_sq = a.v.norm_squared().max(b.v.norm_squared());
            let tolerance = tol.epsilon(b.t - a.t, v_sq);
            let increase = wb - wa;
            // NaN increases (non-finite W) count as violations.
            (!(increase <= tolerance)).then_some(Violation {
                index: i + 1,
                increase,
                tolerance,
            })
        })
        .collect()
}
