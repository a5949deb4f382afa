//! Discrete first-order optimizers behind one interface.
//!
//! Every optimizer takes an [`OptimizerConfig`] and produces a [`RunResult`]
//! with the same verdict semantics, stopping rules, and record layout, so
//! runs can be compared directly.

mod adam;
mod baselines;
mod whiplash;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use nalgebra::DVector;
use thiserror::Error;

use crate::dynamics::fmt_f64;
use crate::functions::CostFunction;
use crate::DIVERGENCE_BOUND;

pub use adam::{adam, AdamParams};
pub use baselines::{gradient_descent, heavy_ball, nesterov_discrete, MomentumSchedule};
pub use whiplash::{inertial_descent, whiplash_damping, whiplash_descent};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizerError {
    #[error("step_size must be positive and finite, got {0}")]
    BadStepSize(f64),
    #[error("max_iters must be at least 1")]
    ZeroBudget,
    #[error("record_stride must be at least 1")]
    ZeroStride,
    #[error("x0 has dimension {actual}, function expects {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("stop_dist_tol needs a function with a known minimizer")]
    NoMinimizer,
    #[error("parameter `{name}` = {value} is out of range ({expected})")]
    BadParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("unknown optimizer `{0}` (expected whiplash, gd, nesterov, heavyball or adam)")]
    UnknownMethod(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub step_size: f64,
    pub max_iters: usize,
    pub x0: DVector<f64>,
    /// Stop once `|grad f(x_k)| <= tol`.
    pub stop_grad_tol: Option<f64>,
    /// Stop once `|x_k - x*| <= tol`.
    pub stop_dist_tol: Option<f64>,
    pub record_stride: usize,
}

impl OptimizerConfig {
    /// Fixed budget, no stopping rule, every iterate recorded.
    pub fn new(step_size: f64, max_iters: usize, x0: DVector<f64>) -> Self {
        OptimizerConfig {
            step_size,
            max_iters,
            x0,
            stop_grad_tol: None,
            stop_dist_tol: None,
            record_stride: 1,
        }
    }

    pub fn with_grad_tol(mut self, tol: f64) -> Self {
        self.stop_grad_tol = Some(tol);
        self
    }

    pub fn with_dist_tol(mut self, tol: f64) -> Self {
        self.stop_dist_tol = Some(tol);
        self
    }

    pub fn with_record_stride(mut self, stride: usize) -> Self {
        self.record_stride = stride;
        self
    }

    pub fn validate(&self, f: &dyn CostFunction) -> Result<(), OptimizerError> {
        if !(self.step_size > 0.0) || !self.step_size.is_finite() {
            return Err(OptimizerError::BadStepSize(self.step_size));
        }
        if self.max_iters == 0 {
            return Err(OptimizerError::ZeroBudget);
        }
        if self.record_stride == 0 {
            return Err(OptimizerError::ZeroStride);
        }
        if self.x0.len() != f.dimension() {
            return Err(OptimizerError::DimensionMismatch {
                expected: f.dimension(),
                actual: self.x0.len(),
            });
        }
        for (name, tol) in [("stop_grad_tol", self.stop_grad_tol), ("stop_dist_tol", self.stop_dist_tol)] {
            if let Some(t) = tol {
                if !(t > 0.0) {
                    return Err(OptimizerError::BadParameter {
                        name,
                        value: t,
                        expected: "> 0",
                    });
                }
            }
        }
        if self.x0.iter().any(|c| !c.is_finite()) {
            return Err(OptimizerError::BadParameter {
                name: "x0",
                value: f64::NAN,
                expected: "finite components",
            });
        }
        if self.stop_dist_tol.is_some() && f.minimizer().is_none() {
            return Err(OptimizerError::NoMinimizer);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    ConvergedGrad,
    ConvergedDist,
    BudgetExhausted,
    Diverged,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConvergedGrad => "converged_grad",
            Verdict::ConvergedDist => "converged_dist",
            Verdict::BudgetExhausted => "budget_exhausted",
            Verdict::Diverged => "diverged",
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, Verdict::ConvergedGrad | Verdict::ConvergedDist)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterateRecord {
    pub k: usize,
    pub x: DVector<f64>,
    /// `x_k - x_{k-1}`; zero at `k = 0`.
    pub z: DVector<f64>,
    /// Momentum multiplier applied to `z_k` by the method (0 for plain GD).
    pub alpha: f64,
    pub f_value: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub method: Method,
    pub final_x: DVector<f64>,
    pub final_f: f64,
    pub iterations_used: usize,
    pub verdict: Verdict,
    pub records: Vec<IterateRecord>,
}

impl RunResult {
    pub fn csv_header(dim: usize) -> String {
        let mut cols = vec!["k".to_string()];
        cols.extend((0..dim).map(|i| format!("x{i}")));
        cols.extend((0..dim).map(|i| format!("z{i}")));
        cols.extend(["f", "grad_norm", "alpha"].map(String::from));
        cols.join(",")
    }

    /// Writes `k,x0,..,z0,..,f,grad_norm,alpha`, one row per record.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::csv_header(self.final_x.len()))?;
        for r in &self.records {
            let mut row = r.k.to_string();
            for c in r.x.iter().chain(r.z.iter()).chain([r.f_value, r.grad_norm, r.alpha].iter()) {
                row.push(',');
                row.push_str(&fmt_f64(*c));
            }
            writeln!(out, "{row}")?;
        }
        Ok(())
    }

    pub fn distance_to(&self, target: &DVector<f64>) -> f64 {
        (&self.final_x - target).norm()
    }
}

/// Names accepted by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Whiplash,
    GradientDescent,
    Nesterov,
    HeavyBall,
    Adam,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Whiplash,
        Method::GradientDescent,
        Method::Nesterov,
        Method::HeavyBall,
        Method::Adam,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Whiplash => "whiplash",
            Method::GradientDescent => "gd",
            Method::Nesterov => "nesterov",
            Method::HeavyBall => "heavyball",
            Method::Adam => "adam",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = OptimizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| OptimizerError::UnknownMethod(s.to_string()))
    }
}

/// Bookkeeping shared by every optimizer: divergence detection, stopping
/// rules, and strided recording.
struct Tracker<'a> {
    f: &'a dyn CostFunction,
    cfg: &'a OptimizerConfig,
    method: Method,
    target: Option<DVector<f64>>,
    records: Vec<IterateRecord>,
    last_good: Option<(usize, DVector<f64>, f64)>,
    pending: Option<IterateRecord>,
}

impl<'a> Tracker<'a> {
    fn new(f: &'a dyn CostFunction, cfg: &'a OptimizerConfig, method: Method) -> Result<Self, OptimizerError> {
        cfg.validate(f)?;
        Ok(Tracker {
            f,
            cfg,
            method,
            target: cfg.stop_dist_tol.and_then(|_| f.minimizer()),
            records: Vec::new(),
            last_good: None,
            pending: None,
        })
    }

    /// Registers iterate `k`. Returns a verdict when the run must stop here.
    fn observe(&mut self, k: usize, x: &DVector<f64>, z: &DVector<f64>, alpha: f64, grad: &DVector<f64>) -> Option<Verdict> {
        let f_value = self.f.value(x);
        let finite = f_value.is_finite() && x.iter().all(|c| c.is_finite()) && x.norm() <= DIVERGENCE_BOUND;
        if !finite {
            return Some(Verdict::Diverged);
        }
        let grad_norm = grad.norm();
        let record = IterateRecord {
            k,
            x: x.clone(),
            z: z.clone(),
            alpha,
            f_value,
            grad_norm,
        };
        self.last_good = Some((k, x.clone(), f_value));
        if k.is_multiple_of(self.cfg.record_stride) {
            self.records.push(record);
            self.pending = None;
        } else {
            self.pending = Some(record);
        }
        if let (Some(tol), Some(target)) = (self.cfg.stop_dist_tol, &self.target) {
            if (x - target).norm() <= tol {
                return Some(Verdict::ConvergedDist);
            }
        }
        if let Some(tol) = self.cfg.stop_grad_tol {
            if grad_norm <= tol {
                return Some(Verdict::ConvergedGrad);
            }
        }
        None
    }

    fn finish(mut self, verdict: Verdict) -> RunResult {
        if let Some(r) = self.pending.take() {
            self.records.push(r);
        }
        let (iterations_used, final_x, final_f) = self.last_good.expect("x0 is always observed");
        RunResult {
            method: self.method,
            final_x,
            final_f,
            iterations_used,
            verdict,
            records: self.records,
        }
    }
}

/// Runs `method` with its default parameters.
pub fn run_default(method: Method, f: &dyn CostFunction, cfg: &OptimizerConfig) -> Result<RunResult, OptimizerError> {
    match method {
        Method::Whiplash => whiplash_descent(f, cfg),
        Method::GradientDescent => gradient_descent(f, cfg),
        Method::Nesterov => nesterov_discrete(f, cfg, MomentumSchedule::Standard),
        Method::HeavyBall => heavy_ball(f, cfg, baselines::DEFAULT_BETA),
        Method::Adam => adam(f, cfg, AdamParams::default()),
    }
}
