//! Continuous-time inertial gradient flow `x'' + gamma(t, x') x' + grad f(x) = 0`
//! integrated with fixed-step Euler schemes.

use std::fmt;
use std::io::{self, Write};

use nalgebra::DVector;
use thiserror::Error;

use crate::functions::CostFunction;
use crate::DIVERGENCE_BOUND;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("nesterov damping alpha/t is singular at t = {0}; start at t > 0")]
    SingularDamping(f64),
    #[error("state became non-finite or left the divergence bound at step {step}")]
    Diverged { step: usize, last: ContinuousState },
    #[error("function has no known minimum value; lyapunov diagnostics unsupported")]
    MissingMinValue,
    #[error("invalid simulation setup: {0}")]
    Invalid(String),
}

/// Damping coefficient rule `gamma(t, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DampingLaw {
    /// Heavy-ball: `gamma = gamma0`.
    Constant { gamma: f64 },
    /// `gamma = alpha / t`.
    Nesterov { alpha: f64 },
    /// `gamma = r |v|^(p - 2)`.
    Attouch { r: f64, p: f64 },
    /// `gamma = 1 + t |v|^2`.
    Whiplash,
}

impl DampingLaw {
    pub fn name(&self) -> &'static str {
        match self {
            DampingLaw::Constant { .. } => "constant",
            DampingLaw::Nesterov { .. } => "nesterov",
            DampingLaw::Attouch { .. } => "attouch",
            DampingLaw::Whiplash => "whiplash",
        }
    }

    /// Time at which a simulation with step `h` starts.
    pub fn start_time(&self, h: f64) -> f64 {
        match self {
            DampingLaw::Nesterov { .. } => h,
            _ => 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let ok = match *self {
            DampingLaw::Constant { gamma } => gamma >= 0.0 && gamma.is_finite(),
            DampingLaw::Nesterov { alpha } => alpha > 0.0 && alpha.is_finite(),
            DampingLaw::Attouch { r, p } => r > 0.0 && p >= 2.0 && r.is_finite() && p.is_finite(),
            DampingLaw::Whiplash => true,
        };
        if ok {
            Ok(())
        } else {
            Err(DynamicsError::Invalid(format!("bad damping parameters {self:?}")))
        }
    }
}

impl fmt::Display for DampingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn damping_value(law: &DampingLaw, t: f64, v: &DVector<f64>) -> Result<f64, DynamicsError> {
    Ok(match *law {
        DampingLaw::Constant { gamma } => gamma,
        DampingLaw::Nesterov { alpha } => {
            if t <= 0.0 {
                return Err(DynamicsError::SingularDamping(t));
            }
            alpha / t
        }
        DampingLaw::Attouch { r, p } => r * v.norm().powf(p - 2.0),
        DampingLaw::Whiplash => 1.0 + t * v.dot(v),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousState {
    pub t: f64,
    pub x: DVector<f64>,
    pub v: DVector<f64>,
}

impl ContinuousState {
    pub fn new(t: f64, x: DVector<f64>, v: DVector<f64>) -> Self {
        assert_eq!(x.len(), v.len(), "position and velocity dimensions differ");
        ContinuousState { t, x, v }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.x.iter().all(|c| c.is_finite())
            && self.v.iter().all(|c| c.is_finite())
    }

    fn within_bounds(&self) -> bool {
        self.is_finite() && self.x.norm() <= DIVERGENCE_BOUND
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    /// Position advanced with the old velocity (`ode1`).
    ExplicitEuler,
    /// Velocity first, then position with the new velocity.
    SymplecticEuler,
}

impl Integrator {
    pub fn name(&self) -> &'static str {
        match self {
            Integrator::ExplicitEuler => "explicit_euler",
            Integrator::SymplecticEuler => "symplectic_euler",
        }
    }
}

fn acceleration(
    state: &ContinuousState,
    f: &dyn CostFunction,
    law: &DampingLaw,
) -> Result<DVector<f64>, DynamicsError> {
    let gamma = damping_value(law, state.t, &state.v)?;
    Ok(-(&state.v * gamma) - f.gradient(&state.x))
}

fn checked(next: ContinuousState, prev: &ContinuousState) -> Result<ContinuousState, DynamicsError> {
    if next.within_bounds() {
        Ok(next)
    } else {
        Err(DynamicsError::Diverged {
            step: 0,
            last: prev.clone(),
        })
    }
}

pub fn step_explicit_euler(
    state: &ContinuousState,
    h: f64,
    f: &dyn CostFunction,
    law: &DampingLaw,
) -> Result<ContinuousState, DynamicsError> {
    let a = acceleration(state, f, law)?;
    let next = ContinuousState {
        t: state.t + h,
        x: &state.x + &state.v * h,
        v: &state.v + a * h,
    };
    checked(next, state)
}

pub fn step_symplectic_euler(
    state: &ContinuousState,
    h: f64,
    f: &dyn CostFunction,
    law: &DampingLaw,
) -> Result<ContinuousState, DynamicsError> {
    let a = acceleration(state, f, law)?;
    let v = &state.v + a * h;
    let next = ContinuousState {
        t: state.t + h,
        x: &state.x + &v * h,
        v,
    };
    checked(next, state)
}

pub fn step(
    integrator: Integrator,
    state: &ContinuousState,
    h: f64,
    f: &dyn CostFunction,
    law: &DampingLaw,
) -> Result<ContinuousState, DynamicsError> {
    match integrator {
        Integrator::ExplicitEuler => step_explicit_euler(state, h, f, law),
        Integrator::SymplecticEuler => step_symplectic_euler(state, h, f, law),
    }
}

/// Lyapunov energy `W = |v|^2 / 2 + f(x) - f*`.
pub fn lyapunov_w(state: &ContinuousState, f: &dyn CostFunction) -> Result<f64, DynamicsError> {
    let f_star = f.min_value().ok_or(DynamicsError::MissingMinValue)?;
    Ok(0.5 * state.v.dot(&state.v) + f.value(&state.x) - f_star)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: DVector<f64>,
    pub v: DVector<f64>,
    pub f_value: f64,
    pub gamma: f64,
    /// `None` when the function has no known minimum value.
    pub lyapunov: Option<f64>,
}

impl Sample {
    fn record(
        state: &ContinuousState,
        f: &dyn CostFunction,
        law: &DampingLaw,
    ) -> Result<Sample, DynamicsError> {
        Ok(Sample {
            t: state.t,
            x: state.x.clone(),
            v: state.v.clone(),
            f_value: f.value(&state.x),
            gamma: damping_value(law, state.t, &state.v)?,
            lyapunov: lyapunov_w(state, f).ok(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub id: String,
    pub function: String,
    pub law: DampingLaw,
    pub integrator: Integrator,
    pub step: f64,
    pub record_stride: usize,
}

/// Where and how a simulation stopped being finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Divergence {
    pub step: usize,
    pub last_finite: ContinuousState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub meta: TrajectoryMeta,
    pub samples: Vec<Sample>,
    pub steps_taken: usize,
    pub divergence: Option<Divergence>,
}

impl Trajectory {
    pub fn diverged(&self) -> bool {
        self.divergence.is_some()
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory always holds the initial sample")
    }

    pub fn csv_header(dim: usize) -> String {
        let mut cols = vec!["t".to_string()];
        cols.extend((0..dim).map(|i| format!("x{i}")));
        cols.extend((0..dim).map(|i| format!("v{i}")));
        cols.extend(["f", "gamma", "W"].map(String::from));
        cols.join(",")
    }

    /// Writes `t,x0,..,v0,..,f,gamma,W` with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let dim = self.samples.first().map_or(0, |s| s.x.len());
        writeln!(out, "{}", Self::csv_header(dim))?;
        for s in &self.samples {
            let mut row = fmt_f64(s.t);
            for c in s.x.iter().chain(s.v.iter()) {
                row.push(',');
                row.push_str(&fmt_f64(*c));
            }
            for c in [s.f_value, s.gamma, s.lyapunov.unwrap_or(f64::NAN)] {
                row.push(',');
                row.push_str(&fmt_f64(c));
            }
            writeln!(out, "{row}")?;
        }
        Ok(())
    }
}

/// Round-trip exact decimal rendering used by every CSV writer.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone)]
pub struct SimulationSpec {
    pub id: String,
    pub law: DampingLaw,
    pub x0: DVector<f64>,
    pub v0: DVector<f64>,
    pub step: f64,
    pub t_end: f64,
    pub integrator: Integrator,
    pub record_stride: usize,
}

/// Integrates from `t0` (0, or `h` for the Nesterov law) to `t_end`,
/// recording every `record_stride`-th state plus the first and last.
///
/// Divergence truncates the trajectory and is flagged in the result rather
/// than returned as an error.
pub fn simulate(f: &dyn CostFunction, spec: &SimulationSpec) -> Result<Trajectory, DynamicsError> {
    let h = spec.step;
    if !(h > 0.0) || !h.is_finite() {
        return Err(DynamicsError::Invalid(format!("step must be positive, got {h}")));
    }
    if spec.record_stride == 0 {
        return Err(DynamicsError::Invalid("record_stride must be at least 1".into()));
    }
    if spec.x0.len() != f.dimension() || spec.v0.len() != f.dimension() {
        return Err(DynamicsError::Invalid(format!(
            "x0/v0 must have dimension {}",
            f.dimension()
        )));
    }
    spec.law.validate()?;
    let t0 = spec.law.start_time(h);
    if !(spec.t_end > t0) {
        return Err(DynamicsError::Invalid(format!(
            "t_end {} must exceed start time {t0}",
            spec.t_end
        )));
    }
    let n_steps = ((spec.t_end - t0) / h).round() as usize;

    let mut state = ContinuousState::new(t0, spec.x0.clone(), spec.v0.clone());
    if !state.within_bounds() {
        return Err(DynamicsError::Invalid("initial state is not finite".into()));
    }
    let mut samples = vec![Sample::record(&state, f, &spec.law)?];
    let mut divergence = None;
    let mut steps_taken = 0;
    for k in 1..=n_steps {
        match step(spec.integrator, &state, h, f, &spec.law) {
            Ok(mut next) => {
                // Anchor time to the grid instead of accumulating t += h.
                next.t = t0 + k as f64 * h;
                state = next;
                steps_taken = k;
                if k % spec.record_stride == 0 || k == n_steps {
                    samples.push(Sample::record(&state, f, &spec.law)?);
                }
            }
            Err(DynamicsError::Diverged { last, .. }) => {
                if samples.last().map(|s| s.t) != Some(last.t) {
                    samples.push(Sample::record(&last, f, &spec.law)?);
                }
                divergence = Some(Divergence {
                    step: k,
                    last_finite: last,
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Trajectory {
        meta: TrajectoryMeta {
            id: spec.id.clone(),
            function: f.name().to_string(),
            law: spec.law,
            integrator: spec.integrator,
            step: h,
            record_stride: spec.record_stride,
        },
        samples,
        steps_taken,
        divergence,
    })
}
