//! Experiment harness: configuration, presets, single runs, method
//! comparisons and step-size sweeps, with CSV output.
//!
//! ```
//! use whiplash::harness::{parse_config, run};
//!
//! let cfg = parse_config(
//!     "function = rosenbrock\nmethod = gd\nstep_size = 1e-3\nmax_iters = 100\nx0 = [0, 0]\n",
//! )
//! .unwrap();
//! let outcome = run(&cfg).unwrap();
//! assert_eq!(outcome.summary.iterations, 100);
//! ```

pub mod config;
pub mod presets;
mod runner;

use std::path::PathBuf;

use crate::dynamics::DynamicsError;
use crate::optim::{OptimizerError, Verdict};

pub use config::{
    apply_overrides, from_document, parse_config, parse_config_with_overrides, ConfigError, DiscreteMethod, Document,
    Dynamics, Mode, RunConfig,
};
pub use presets::{preset, Preset, PresetKind};
pub use runner::{
    compare, format_table, run, run_all, run_and_write, step_size_sweep, write_outputs, Comparison, OutputPaths,
    RunOutcome, SummaryRow, Sweep, Trace, SUMMARY_HEADER, SWEEP_HEADER,
};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } => EXIT_IO,
            _ => EXIT_VALIDATION,
        }
    }
}

/// `EXIT_DIVERGED` if any run diverged, else `EXIT_SUCCESS`.
pub fn exit_code_for<'a>(rows: impl IntoIterator<Item = &'a SummaryRow>) -> i32 {
    if rows.into_iter().any(|r| r.verdict == Verdict::Diverged) {
        EXIT_DIVERGED
    } else {
        EXIT_SUCCESS
    }
}

/// Configurations for `compare --methods`: `doc` with its method replaced.
///
/// Method parameters are kept only for the method the document names.
pub fn configs_for_methods(doc: &Document, methods: &[String]) -> Result<Vec<RunConfig>, HarnessError> {
    if methods.is_empty() {
        return Err(HarnessError::Validation("--methods needs at least one method".into()));
    }
    let base = from_document(doc)?;
    methods
        .iter()
        .map(|m| {
            let mut d = if m == base.method_name() {
                doc.clone()
            } else {
                doc.without_prefix("method.params.")
            };
            d.insert("method", config::Value::Text(m.clone()));
            d.insert("id", config::Value::Text(format!("{}_{m}", base.id)));
            d.insert("output.prefix", config::Value::Text(format!("{}_{m}", base.output_prefix)));
            from_document(&d).map_err(HarnessError::from)
        })
        .collect()
}

/// Result of running a named preset.
#[derive(Debug)]
pub struct PresetRun {
    pub name: &'static str,
    pub outcomes: Vec<RunOutcome>,
    pub files: Vec<PathBuf>,
}

/// Runs a preset and writes every output file under `dir`.
pub fn run_preset(name: &str, dir: &std::path::Path) -> Result<PresetRun, HarnessError> {
    let p = preset(name)?;
    let cfgs = p.runs.iter().map(from_document).collect::<Result<Vec<_>, _>>()?;
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    match p.kind {
        PresetKind::Compare => {
            let cmp = compare(&cfgs)?;
            let files = cmp.write(dir, p.name)?;
            let outcomes = cmp.ranking.iter().map(|&i| cmp.outcomes[i].clone()).collect();
            Ok(PresetRun {
                name: p.name,
                outcomes,
                files,
            })
        }
        PresetKind::Batch => {
            let outcomes = run_all(&cfgs)?;
            let mut files = Vec::new();
            for o in &outcomes {
                let paths = write_outputs(o, dir)?;
                files.extend([paths.trace, paths.summary]);
            }
            Ok(PresetRun {
                name: p.name,
                outcomes,
                files,
            })
        }
    }
}
