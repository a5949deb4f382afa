//! Named experiment presets, stored as configuration documents.

use super::config::{ConfigError, Document};

/// How a preset's runs are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    /// Independent runs, each with its own trace and summary.
    Batch,
    /// Same problem under several methods, tabulated against each other.
    Compare,
}

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub kind: PresetKind,
    pub runs: Vec<Document>,
}

pub const NAMES: [&str; 6] = ["fig2", "fig5", "fig6a", "fig6b", "fig7_all", "fig8"];

const CONTINUOUS: &str = "
mode = continuous
function = rosenbrock
method = whiplash
integrator = explicit_euler
v0 = [-1000, -1000]
t_end = 50
step_size = 0.001
";

const DISCRETE: &str = "
mode = discrete
function = rosenbrock
method = whiplash
step_size = 1e-5
max_iters = 20000
";

fn doc(base: &str, extra: &str) -> Document {
    Document::parse(&format!("{base}\n{extra}")).expect("preset documents are well formed")
}

pub fn preset(name: &str) -> Result<Preset, ConfigError> {
    let (kind, runs) = match name {
        "fig2" => (
            PresetKind::Compare,
            ["whiplash", "gd", "nesterov", "heavyball", "adam"]
                .iter()
                .map(|m| doc(DISCRETE, &format!("id = fig2_{m}\nmethod = {m}\nx0 = [5, -3]\nrecord_stride = 100")))
                .collect(),
        ),
        "fig5" => (
            PresetKind::Batch,
            vec![doc(CONTINUOUS, "id = fig5\nx0 = [12, -3]\nrecord_stride = 10")],
        ),
        "fig6a" => (
            PresetKind::Batch,
            vec![doc(CONTINUOUS, "id = fig6a\nx0 = [12, -3]\nrecord_stride = 100")],
        ),
        "fig6b" => (
            PresetKind::Batch,
            vec![doc(CONTINUOUS, "id = fig6b\nx0 = [-4, 17]\nrecord_stride = 100")],
        ),
        "fig7_all" => (
            PresetKind::Batch,
            [("a", "0, 0"), ("b", "12, 3"), ("c", "-3, 7"), ("d", "-7, 17")]
                .iter()
                .map(|(tag, x0)| doc(DISCRETE, &format!("id = fig7{tag}\nx0 = [{x0}]\nrecord_stride = 100")))
                .collect(),
        ),
        "fig8" => (
            PresetKind::Batch,
            vec![doc(DISCRETE, "id = fig8\nx0 = [0, 0]\nrecord_stride = 10")],
        ),
        other => {
            return Err(ConfigError::Invalid {
                key: "preset".into(),
                message: format!("unknown preset `{other}` (expected one of {})", NAMES.join(", ")),
            })
        }
    };
    let name = NAMES.iter().find(|n| **n == name).expect("matched above");
    Ok(Preset { name, kind, runs })
}

/// Base document for a `preset = <name>` key inside a config file.
pub(super) fn single_run_document(name: &str) -> Result<Document, ConfigError> {
    let mut p = preset(name)?;
    if p.runs.len() != 1 {
        return Err(ConfigError::Invalid {
            key: "preset".into(),
            message: format!("`{name}` expands to {} runs; use the preset command", p.runs.len()),
        });
    }
    let mut base = p.runs.pop().expect("one run");
    base.insert("preset", super::config::Value::Text(name.to_string()));
    Ok(base)
}
