//! Command-line front end for the harness. The `whiplash-bench` binary is a
//! thin wrapper around [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::harness::{self, Document, HarnessError};

#[derive(Parser)]
#[command(name = "whiplash-bench", version, about = "Run whiplash and baseline optimizer experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override a key, e.g. `--set step_size=1e-4`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run one configuration under several methods and rank them.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<String>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Re-run one configuration at several step sizes.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<f64>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a named preset (fig2, fig5, fig6a, fig6b, fig7_all, fig8).
    Preset {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(config: &Path, set: &[String]) -> Result<Document, HarnessError> {
    let source = std::fs::read_to_string(config).map_err(|source| HarnessError::Io {
        path: config.to_path_buf(),
        source,
    })?;
    let mut doc = Document::parse(&source)?;
    harness::apply_overrides(&mut doc, set)?;
    Ok(doc)
}

fn ensure_dir(dir: &Path) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn stdout_error(source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, HarnessError> {
    match cmd {
        Command::Run { config, set, out: dir } => {
            let cfg = harness::from_document(&load(&config, &set)?)?;
            ensure_dir(&dir)?;
            let outcome = harness::run_and_write(&cfg, &dir)?;
            write!(out, "{}", harness::format_table([&outcome.summary])).map_err(stdout_error)?;
            Ok(harness::exit_code_for([&outcome.summary]))
        }
        Command::Compare {
            config,
            methods,
            set,
            out: dir,
        } => {
            let doc = load(&config, &set)?;
            let base = harness::from_document(&doc)?;
            let cfgs = harness::configs_for_methods(&doc, &methods)?;
            ensure_dir(&dir)?;
            let cmp = harness::compare(&cfgs)?;
            cmp.write(&dir, &base.output_prefix)?;
            write!(out, "{}", harness::format_table(cmp.ranked().map(|o| &o.summary))).map_err(stdout_error)?;
            Ok(harness::exit_code_for(cmp.outcomes.iter().map(|o| &o.summary)))
        }
        Command::Sweep {
            config,
            sizes,
            set,
            out: dir,
        } => {
            let cfg = harness::from_document(&load(&config, &set)?)?;
            ensure_dir(&dir)?;
            let sweep = harness::step_size_sweep(&cfg, &sizes)?;
            sweep.write(&dir.join(format!("{}_sweep.csv", cfg.output_prefix)))?;
            write!(out, "{}", harness::format_table(&sweep.rows)).map_err(stdout_error)?;
            match sweep.largest_stable {
                Some(s) => writeln!(out, "largest non-diverging step size: {s:e}"),
                None => writeln!(out, "every step size diverged"),
            }
            .map_err(stdout_error)?;
            // Probing unstable sizes is the point of a sweep; only a sweep
            // with no stable size reports divergence.
            Ok(match sweep.largest_stable {
                Some(_) => harness::EXIT_SUCCESS,
                None => harness::EXIT_DIVERGED,
            })
        }
        Command::Preset { name, out: dir } => {
            let run = harness::run_preset(&name, &dir)?;
            write!(out, "{}", harness::format_table(run.outcomes.iter().map(|o| &o.summary))).map_err(stdout_error)?;
            for f in &run.files {
                writeln!(out, "wrote {}", f.display()).map_err(stdout_error)?;
            }
            Ok(harness::exit_code_for(run.outcomes.iter().map(|o| &o.summary)))
        }
    }
}

/// Parses `args` (program name first), executes, and returns the process
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return harness::EXIT_VALIDATION;
            }
            let _ = write!(out, "{rendered}");
            return harness::EXIT_SUCCESS;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
