use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use nalgebra::DVector;
use rayon::prelude::*;

use super::config::{DiscreteMethod, Dynamics, Mode, RunConfig};
use super::HarnessError;
use crate::dynamics::{fmt_f64, simulate, SimulationSpec, Trajectory};
use crate::optim::{
    adam, gradient_descent, heavy_ball, nesterov_discrete, whiplash_descent, OptimizerConfig, RunResult, Verdict,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Trace {
    Discrete(RunResult),
    Continuous(Trajectory),
}

impl Trace {
    fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        match self {
            Trace::Discrete(r) => r.write_csv(out),
            Trace::Continuous(t) => t.write_csv(out),
        }
    }

    /// `(iteration or time, f)` for every recorded point.
    pub fn f_curve(&self) -> Vec<(f64, f64)> {
        match self {
            Trace::Discrete(r) => r.records.iter().map(|rec| (rec.k as f64, rec.f_value)).collect(),
            Trace::Continuous(t) => t.samples.iter().map(|s| (s.t, s.f_value)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub id: String,
    pub mode: Mode,
    pub function: String,
    pub method: String,
    pub step_size: f64,
    pub final_f: f64,
    /// `None` when the function has no known minimizer.
    pub final_dist: Option<f64>,
    /// Optimizer iterations or integrator steps.
    pub iterations: usize,
    pub verdict: Verdict,
    /// Reported on stdout only; CSV files stay byte-deterministic.
    pub wall_time: Duration,
}

pub const SUMMARY_HEADER: &str = "id,mode,function,method,step_size,final_f,final_dist,iterations,verdict";

impl SummaryRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.id,
            self.mode.as_str(),
            csv_field(&self.function),
            self.method,
            fmt_f64(self.step_size),
            fmt_f64(self.final_f),
            fmt_f64(self.final_dist.unwrap_or(f64::NAN)),
            self.iterations,
            self.verdict
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: SummaryRow,
    pub trace: Trace,
    pub output_prefix: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputPaths {
    pub trace: PathBuf,
    pub summary: PathBuf,
}

/// Runs one experiment in memory.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let f = cfg.function.as_ref();
    let x0 = DVector::from_column_slice(&cfg.x0);
    let start = Instant::now();
    let (trace, final_x, final_f, iterations, verdict) = match &cfg.dynamics {
        Dynamics::Discrete { method, max_iters } => {
            let mut oc = OptimizerConfig::new(cfg.step_size, *max_iters, x0).with_record_stride(cfg.record_stride);
            oc.stop_grad_tol = cfg.stop_grad_tol;
            oc.stop_dist_tol = cfg.stop_dist_tol;
            let r = match *method {
                DiscreteMethod::Whiplash => whiplash_descent(f, &oc)?,
                DiscreteMethod::GradientDescent => gradient_descent(f, &oc)?,
                DiscreteMethod::Nesterov(schedule) => nesterov_discrete(f, &oc, schedule)?,
                DiscreteMethod::HeavyBall { beta } => heavy_ball(f, &oc, beta)?,
                DiscreteMethod::Adam(params) => adam(f, &oc, params)?,
            };
            let (x, fv, n, v) = (r.final_x.clone(), r.final_f, r.iterations_used, r.verdict);
            (Trace::Discrete(r), x, fv, n, v)
        }
        Dynamics::Continuous {
            law,
            t_end,
            v0,
            integrator,
        } => {
            let spec = SimulationSpec {
                id: cfg.id.clone(),
                law: *law,
                x0,
                v0: DVector::from_column_slice(v0),
                step: cfg.step_size,
                t_end: *t_end,
                integrator: *integrator,
                record_stride: cfg.record_stride,
            };
            let mut traj = simulate(f, &spec)?;
            traj.meta.function = cfg.function_spec.clone();
            let last = traj.last();
            let (x, fv) = (last.x.clone(), last.f_value);
            let verdict = if traj.diverged() {
                Verdict::Diverged
            } else {
                classify_endpoint(cfg, &x)
            };
            let n = traj.steps_taken;
            (Trace::Continuous(traj), x, fv, n, verdict)
        }
    };
    let wall_time = start.elapsed();
    let final_dist = f.minimizer().map(|m| (&final_x - m).norm());
    Ok(RunOutcome {
        summary: SummaryRow {
            id: cfg.id.clone(),
            mode: cfg.mode(),
            function: cfg.function_spec.clone(),
            method: cfg.method_name().to_string(),
            step_size: cfg.step_size,
            final_f,
            final_dist,
            iterations,
            verdict,
            wall_time,
        },
        trace,
        output_prefix: cfg.output_prefix.clone(),
    })
}

/// Continuous runs always integrate to `t_end`; stopping rules are applied
/// to the end state.
fn classify_endpoint(cfg: &RunConfig, x: &DVector<f64>) -> Verdict {
    let f = cfg.function.as_ref();
    if let (Some(tol), Some(m)) = (cfg.stop_dist_tol, f.minimizer()) {
        if (x - m).norm() <= tol {
            return Verdict::ConvergedDist;
        }
    }
    if let Some(tol) = cfg.stop_grad_tol {
        if f.gradient(x).norm() <= tol {
            return Verdict::ConvergedGrad;
        }
    }
    Verdict::BudgetExhausted
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    File::create(path).map(BufWriter::new).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn io_at(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), HarnessError> {
    let mut out = create(path)?;
    body(&mut out).and_then(|_| out.flush()).map_err(io_at(path))
}

/// Writes `<prefix>_trace.csv` and `<prefix>_summary.csv` under `dir`.
pub fn write_outputs(outcome: &RunOutcome, dir: &Path) -> Result<OutputPaths, HarnessError> {
    let trace = dir.join(format!("{}_trace.csv", outcome.output_prefix));
    let summary = dir.join(format!("{}_summary.csv", outcome.output_prefix));
    write_file(&trace, |out| outcome.trace.write_csv(out))?;
    write_file(&summary, |out| {
        writeln!(out, "{SUMMARY_HEADER}")?;
        writeln!(out, "{}", outcome.summary.csv_row())
    })?;
    Ok(OutputPaths { trace, summary })
}

pub fn run_and_write(cfg: &RunConfig, dir: &Path) -> Result<RunOutcome, HarnessError> {
    let outcome = run(cfg)?;
    write_outputs(&outcome, dir)?;
    Ok(outcome)
}

/// Runs independent configurations in parallel; results keep input order.
pub fn run_all(cfgs: &[RunConfig]) -> Result<Vec<RunOutcome>, HarnessError> {
    cfgs.par_iter().map(run).collect()
}

#[derive(Debug, Clone)]
pub struct Comparison {
    /// In input order.
    pub outcomes: Vec<RunOutcome>,
    /// Indices into `outcomes`, best final `f` first.
    pub ranking: Vec<usize>,
}

/// Runs the same problem under several methods.
///
/// All configurations must share function, mode and `x0`. Ranking is by
/// final `f` ascending (NaN last), ties broken by method name then id.
pub fn compare(cfgs: &[RunConfig]) -> Result<Comparison, HarnessError> {
    let first = cfgs
        .first()
        .ok_or_else(|| HarnessError::Validation("compare needs at least one configuration".into()))?;
    for c in &cfgs[1..] {
        if c.function_spec != first.function_spec {
            return Err(HarnessError::Validation(format!(
                "`{}` uses function `{}`, `{}` uses `{}`",
                c.id, c.function_spec, first.id, first.function_spec
            )));
        }
        if c.x0 != first.x0 {
            return Err(HarnessError::Validation(format!(
                "`{}` starts at {:?}, `{}` at {:?}",
                c.id, c.x0, first.id, first.x0
            )));
        }
        if c.mode() != first.mode() {
            return Err(HarnessError::Validation(format!(
                "`{}` is {}, `{}` is {}",
                c.id,
                c.mode().as_str(),
                first.id,
                first.mode().as_str()
            )));
        }
    }
    let outcomes = run_all(cfgs)?;
    let mut ranking: Vec<usize> = (0..outcomes.len()).collect();
    ranking.sort_by(|&a, &b| {
        let (ra, rb) = (&outcomes[a].summary, &outcomes[b].summary);
        ra.final_f
            .is_nan()
            .cmp(&rb.final_f.is_nan())
            .then(ra.final_f.total_cmp(&rb.final_f))
            .then_with(|| ra.method.cmp(&rb.method))
            .then_with(|| ra.id.cmp(&rb.id))
    });
    Ok(Comparison { outcomes, ranking })
}

impl Comparison {
    pub fn ranked(&self) -> impl Iterator<Item = &RunOutcome> {
        self.ranking.iter().map(|&i| &self.outcomes[i])
    }

    /// `rank,` followed by the summary columns, best first.
    pub fn table_csv(&self) -> String {
        let mut s = format!("rank,{SUMMARY_HEADER}\n");
        for (rank, o) in self.ranked().enumerate() {
            let _ = writeln!(s, "{},{}", rank + 1, o.summary.csv_row());
        }
        s
    }

    /// `k` (or `t`) then one `f` column per run, headed by run id. Cells are
    /// empty where a run has no record at that abscissa.
    pub fn curves_csv(&self) -> String {
        let axis = match self.outcomes.first().map(|o| &o.trace) {
            Some(Trace::Continuous(_)) => "t",
            _ => "k",
        };
        let mut points: Vec<(f64, usize, f64)> = Vec::new();
        for (col, o) in self.outcomes.iter().enumerate() {
            points.extend(o.trace.f_curve().into_iter().map(|(a, f)| (a, col, f)));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut s = String::from(axis);
        for o in &self.outcomes {
            s.push(',');
            s.push_str(&o.summary.id);
        }
        s.push('\n');
        let mut i = 0;
        while i < points.len() {
            let abscissa = points[i].0;
            let mut cells = vec![String::new(); self.outcomes.len()];
            while i < points.len() && points[i].0 == abscissa {
                cells[points[i].1] = fmt_f64(points[i].2);
                i += 1;
            }
            let lead = if axis == "k" { format!("{}", abscissa as u64) } else { fmt_f64(abscissa) };
            let _ = writeln!(s, "{lead},{}", cells.join(","));
        }
        s
    }

    /// Writes every run's own outputs plus `<name>_compare.csv` and
    /// `<name>_curves.csv`.
    pub fn write(&self, dir: &Path, name: &str) -> Result<Vec<PathBuf>, HarnessError> {
        let mut paths = Vec::new();
        for o in &self.outcomes {
            let p = write_outputs(o, dir)?;
            paths.extend([p.trace, p.summary]);
        }
        for (suffix, body) in [("compare", self.table_csv()), ("curves", self.curves_csv())] {
            let path = dir.join(format!("{name}_{suffix}.csv"));
            write_file(&path, |out| out.write_all(body.as_bytes()))?;
            paths.push(path);
        }
        Ok(paths)
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub rows: Vec<SummaryRow>,
    /// Largest step size whose verdict is not `diverged`.
    pub largest_stable: Option<f64>,
}

pub const SWEEP_HEADER: &str = "step_size,verdict,final_f,final_dist,iterations";

/// Re-runs `base` at each step size.
pub fn step_size_sweep(base: &RunConfig, sizes: &[f64]) -> Result<Sweep, HarnessError> {
    if base.mode() != Mode::Discrete {
        return Err(HarnessError::Validation("step-size sweep needs a discrete configuration".into()));
    }
    if sizes.is_empty() {
        return Err(HarnessError::Validation("step-size sweep needs at least one size".into()));
    }
    if let Some(bad) = sizes.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
        return Err(HarnessError::Validation(format!("step sizes must be positive, got {bad}")));
    }
    let cfgs: Vec<RunConfig> = sizes
        .iter()
        .map(|&s| {
            let mut c = base.clone();
            c.step_size = s;
            c.id = format!("{}_s{s:e}", base.id);
            c.output_prefix = format!("{}_s{s:e}", base.output_prefix);
            c
        })
        .collect();
    let rows: Vec<SummaryRow> = run_all(&cfgs)?.into_iter().map(|o| o.summary).collect();
    let largest_stable = rows
        .iter()
        .filter(|r| r.verdict != Verdict::Diverged)
        .map(|r| r.step_size)
        .max_by(f64::total_cmp);
    Ok(Sweep { rows, largest_stable })
}

impl Sweep {
    pub fn csv(&self) -> String {
        let mut s = format!("{SWEEP_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                fmt_f64(r.step_size),
                r.verdict,
                fmt_f64(r.final_f),
                fmt_f64(r.final_dist.unwrap_or(f64::NAN)),
                r.iterations
            );
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), HarnessError> {
        write_file(path, |out| out.write_all(self.csv().as_bytes()))
    }
}

/// Fixed-width table for terminal output, including wall time.
pub fn format_table<'a>(rows: impl IntoIterator<Item = &'a SummaryRow>) -> String {
    let mut s = format!(
        "{:<20} {:<10} {:>10} {:>12} {:>12} {:>10} {:>10}  {}\n",
        "id", "method", "step", "final_f", "final_dist", "iters", "wall_ms", "verdict"
    );
    for r in rows {
        let dist = r.final_dist.map_or("-".to_string(), |d| format!("{d:.4e}"));
        let _ = writeln!(
            s,
            "{:<20} {:<10} {:>10.3e} {:>12.4e} {:>12} {:>10} {:>10.1}  {}",
            r.id,
            r.method,
            r.step_size,
            r.final_f,
            dist,
            r.iterations,
            r.wall_time.as_secs_f64() * 1e3,
            r.verdict
        );
    }
    s
}
