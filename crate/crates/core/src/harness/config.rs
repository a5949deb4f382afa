//! Flat key-value experiment configuration.
//!
//! One `key = value` per line, `#` starts a comment. Keys are dotted paths
//! (`method.params.beta`). Values are numbers, strings (bare or
//! double-quoted), or numeric lists `[a, b, ...]`. Later assignments win, so
//! command-line `--set` overrides are simply appended.

use std::collections::BTreeMap;
use std::fmt;

use crate::dynamics::{DampingLaw, Integrator};
use crate::functions::{self, SharedFunction};
use crate::optim::{AdamParams, Method, MomentumSchedule};

use super::presets;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}`: expected {expected}, got `{got}`")]
    TypeMismatch {
        key: String,
        expected: &'static str,
        got: String,
    },
    #[error("key `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key: key.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
    List(Vec<f64>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(n) => write!(f, "{n}"),
            Value::Text(s) => write!(f, "\"{s}\""),
            Value::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

fn parse_value(raw: &str) -> Result<Value, String> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Err("empty value".into());
    }
    if let Some(inner) = raw.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or("unterminated list")?;
        if inner.trim().is_empty() {
            return Ok(Value::List(Vec::new()));
        }
        return inner
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| format!("`{}` is not a number", s.trim())))
            .collect::<Result<Vec<_>, _>>()
            .map(Value::List);
    }
    if let Some(inner) = raw.strip_prefix('"') {
        let inner = inner.strip_suffix('"').ok_or("unterminated string")?;
        return Ok(Value::Text(inner.to_string()));
    }
    Ok(match raw.parse::<f64>() {
        Ok(n) => Value::Number(n),
        Err(_) => Value::Text(raw.to_string()),
    })
}

/// Raw key-value document, insertion order irrelevant.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    entries: BTreeMap<String, Value>,
}

impl Document {
    pub fn parse(source: &str) -> Result<Self, ConfigError> {
        let mut doc = Document::default();
        for (i, line) in source.lines().enumerate() {
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            doc.set_line(line).map_err(|message| ConfigError::Syntax { line: i + 1, message })?;
        }
        Ok(doc)
    }

    /// Applies one `key=value` assignment.
    pub fn set_line(&mut self, assignment: &str) -> Result<(), String> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| format!("expected `key = value`, got `{assignment}`"))?;
        let key = key.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(format!("bad key `{key}`"));
        }
        self.entries.insert(key.to_string(), parse_value(value)?);
        Ok(())
    }

    pub fn insert(&mut self, key: &str, value: Value) {
        self.entries.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    /// `other` wins on conflicts.
    pub fn merged_with(mut self, other: &Document) -> Document {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
        self
    }

    pub fn without_prefix(&self, prefix: &str) -> Document {
        Document {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| !k.starts_with(prefix))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    fn text(&self, key: &str) -> Result<Option<String>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Text(s)) => Ok(Some(s.clone())),
            Some(other) => Err(mismatch(key, "a string", other)),
        }
    }

    fn number(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => Ok(Some(*n)),
            Some(other) => Err(mismatch(key, "a number", other)),
        }
    }

    fn count(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.number(key)? {
            None => Ok(None),
            Some(n) if n >= 1.0 && n.fract() == 0.0 && n <= 1e15 => Ok(Some(n as usize)),
            Some(n) => Err(ConfigError::TypeMismatch {
                key: key.to_string(),
                expected: "a positive integer",
                got: n.to_string(),
            }),
        }
    }

    fn list(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::List(xs)) => Ok(Some(xs.clone())),
            Some(Value::Number(n)) => Ok(Some(vec![*n])),
            Some(other) => Err(mismatch(key, "a numeric list", other)),
        }
    }
}

fn mismatch(key: &str, expected: &'static str, got: &Value) -> ConfigError {
    ConfigError::TypeMismatch {
        key: key.to_string(),
        expected,
        got: got.to_string(),
    }
}

const TOP_LEVEL_KEYS: &[&str] = &[
    "preset",
    "id",
    "mode",
    "function",
    "method",
    "step_size",
    "max_iters",
    "t_end",
    "x0",
    "v0",
    "integrator",
    "stop.grad_tol",
    "stop.dist_tol",
    "record_stride",
    "output.prefix",
];

const PARAM_PREFIX: &str = "method.params.";

/// Default record stride.
pub const DEFAULT_RECORD_STRIDE: usize = 100;

/// Default initial speed per component for continuous runs.
pub const DEFAULT_INITIAL_SPEED: f64 = -1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Continuous,
    Discrete,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Continuous => "continuous",
            Mode::Discrete => "discrete",
        }
    }
}

/// Optimizer plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscreteMethod {
    Whiplash,
    GradientDescent,
    Nesterov(MomentumSchedule),
    HeavyBall { beta: f64 },
    Adam(AdamParams),
}

impl DiscreteMethod {
    pub fn method(&self) -> Method {
        match self {
            DiscreteMethod::Whiplash => Method::Whiplash,
            DiscreteMethod::GradientDescent => Method::GradientDescent,
            DiscreteMethod::Nesterov(_) => Method::Nesterov,
            DiscreteMethod::HeavyBall { .. } => Method::HeavyBall,
            DiscreteMethod::Adam(_) => Method::Adam,
        }
    }

    pub fn with_defaults(method: Method) -> Self {
        match method {
            Method::Whiplash => DiscreteMethod::Whiplash,
            Method::GradientDescent => DiscreteMethod::GradientDescent,
            Method::Nesterov => DiscreteMethod::Nesterov(MomentumSchedule::Standard),
            Method::HeavyBall => DiscreteMethod::HeavyBall { beta: 0.9 },
            Method::Adam => DiscreteMethod::Adam(AdamParams::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Dynamics {
    Discrete {
        method: DiscreteMethod,
        max_iters: usize,
    },
    Continuous {
        law: DampingLaw,
        t_end: f64,
        v0: Vec<f64>,
        integrator: Integrator,
    },
}

/// A fully validated experiment.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub id: String,
    pub preset: Option<String>,
    pub function_spec: String,
    pub function: SharedFunction,
    pub dynamics: Dynamics,
    pub step_size: f64,
    pub x0: Vec<f64>,
    pub stop_grad_tol: Option<f64>,
    pub stop_dist_tol: Option<f64>,
    pub record_stride: usize,
    pub output_prefix: String,
}

impl RunConfig {
    pub fn mode(&self) -> Mode {
        match self.dynamics {
            Dynamics::Discrete { .. } => Mode::Discrete,
            Dynamics::Continuous { .. } => Mode::Continuous,
        }
    }

    pub fn method_name(&self) -> &'static str {
        match &self.dynamics {
            Dynamics::Discrete { method, .. } => method.method().as_str(),
            Dynamics::Continuous { law, .. } => law.name(),
        }
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(source: &str) -> Result<RunConfig, ConfigError> {
    from_document(&Document::parse(source)?)
}

/// Parses a document and applies `--set key=value` overrides.
pub fn parse_config_with_overrides(source: &str, overrides: &[String]) -> Result<RunConfig, ConfigError> {
    let mut doc = Document::parse(source)?;
    apply_overrides(&mut doc, overrides)?;
    from_document(&doc)
}

pub fn apply_overrides(doc: &mut Document, overrides: &[String]) -> Result<(), ConfigError> {
    for (i, o) in overrides.iter().enumerate() {
        doc.set_line(o).map_err(|message| ConfigError::Syntax {
            line: i + 1,
            message: format!("--set {o}: {message}"),
        })?;
    }
    Ok(())
}

/// Expands `preset` (if any) underneath the document and validates.
pub fn from_document(doc: &Document) -> Result<RunConfig, ConfigError> {
    let doc = match doc.text("preset")? {
        Some(name) => {
            let base = presets::single_run_document(&name)?;
            base.merged_with(doc)
        }
        None => doc.clone(),
    };
    validate(&doc)
}

fn validate(doc: &Document) -> Result<RunConfig, ConfigError> {
    for key in doc.keys() {
        if !TOP_LEVEL_KEYS.contains(&key) && !key.starts_with(PARAM_PREFIX) {
            return Err(ConfigError::UnknownKey(key.to_string()));
        }
    }

    let function_spec = doc.text("function")?.ok_or_else(|| ConfigError::Missing("function".into()))?;
    let function = functions::by_name(&function_spec).map_err(|e| ConfigError::invalid("function", e.to_string()))?;
    let method_name = doc.text("method")?.ok_or_else(|| ConfigError::Missing("method".into()))?;

    let step_size = doc.number("step_size")?.ok_or_else(|| ConfigError::Missing("step_size".into()))?;
    if !(step_size > 0.0) || !step_size.is_finite() {
        return Err(ConfigError::invalid("step_size", format!("must be positive, got {step_size}")));
    }

    let mode = match doc.text("mode")?.as_deref() {
        Some("continuous") => Mode::Continuous,
        Some("discrete") => Mode::Discrete,
        Some(other) => return Err(ConfigError::invalid("mode", format!("expected continuous or discrete, got `{other}`"))),
        None => match (doc.get("max_iters").is_some(), doc.get("t_end").is_some()) {
            (true, false) => Mode::Discrete,
            (false, true) => Mode::Continuous,
            (true, true) => return Err(ConfigError::invalid("mode", "both max_iters and t_end given; set mode explicitly")),
            (false, false) => return Err(ConfigError::Missing("max_iters (discrete) or t_end (continuous)".into())),
        },
    };

    let dim = function.dimension();
    let x0 = doc.list("x0")?.ok_or_else(|| ConfigError::Missing("x0".into()))?;
    if x0.len() != dim {
        return Err(ConfigError::invalid("x0", format!("expected {dim} components, got {}", x0.len())));
    }
    if x0.iter().any(|c| !c.is_finite()) {
        return Err(ConfigError::invalid("x0", "components must be finite"));
    }

    let params = Params::collect(doc)?;
    let dynamics = match mode {
        Mode::Discrete => {
            for key in ["t_end", "v0", "integrator"] {
                if doc.get(key).is_some() {
                    return Err(ConfigError::invalid(key, "only valid for continuous runs"));
                }
            }
            let method = discrete_method(&method_name, &params)?;
            let max_iters = doc.count("max_iters")?.ok_or_else(|| ConfigError::Missing("max_iters".into()))?;
            Dynamics::Discrete { method, max_iters }
        }
        Mode::Continuous => {
            if doc.get("max_iters").is_some() {
                return Err(ConfigError::invalid("max_iters", "only valid for discrete runs"));
            }
            let law = damping_law(&method_name, &params)?;
            let t_end = doc.number("t_end")?.ok_or_else(|| ConfigError::Missing("t_end".into()))?;
            if !(t_end > law.start_time(step_size)) || !t_end.is_finite() {
                return Err(ConfigError::invalid("t_end", format!("must exceed the start time, got {t_end}")));
            }
            let v0 = doc.list("v0")?.unwrap_or_else(|| vec![DEFAULT_INITIAL_SPEED; dim]);
            if v0.len() != dim {
                return Err(ConfigError::invalid("v0", format!("expected {dim} components, got {}", v0.len())));
            }
            let integrator = match doc.text("integrator")?.as_deref() {
                None | Some("explicit_euler") => Integrator::ExplicitEuler,
                Some("symplectic_euler") => Integrator::SymplecticEuler,
                Some(other) => {
                    return Err(ConfigError::invalid(
                        "integrator",
                        format!("expected explicit_euler or symplectic_euler, got `{other}`"),
                    ))
                }
            };
            Dynamics::Continuous {
                law,
                t_end,
                v0,
                integrator,
            }
        }
    };

    let positive = |key: &str| -> Result<Option<f64>, ConfigError> {
        match doc.number(key)? {
            Some(t) if !(t > 0.0) => Err(ConfigError::invalid(key, format!("must be positive, got {t}"))),
            other => Ok(other),
        }
    };
    let stop_grad_tol = positive("stop.grad_tol")?;
    let stop_dist_tol = positive("stop.dist_tol")?;
    if stop_dist_tol.is_some() && function.minimizer().is_none() {
        return Err(ConfigError::invalid("stop.dist_tol", "function has no known minimizer"));
    }
    let record_stride = doc.count("record_stride")?.unwrap_or(DEFAULT_RECORD_STRIDE);
    let preset = doc.text("preset")?;
    let id = doc
        .text("id")?
        .or_else(|| preset.clone())
        .unwrap_or_else(|| "run".to_string());
    let output_prefix = doc.text("output.prefix")?.unwrap_or_else(|| id.clone());

    Ok(RunConfig {
        id,
        preset,
        function_spec,
        function,
        dynamics,
        step_size,
        x0,
        stop_grad_tol,
        stop_dist_tol,
        record_stride,
        output_prefix,
    })
}

/// `method.params.*` values, consumed as they are read so leftovers can be
/// reported as unknown.
struct Params {
    values: BTreeMap<String, f64>,
}

impl Params {
    fn collect(doc: &Document) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for key in doc.keys() {
            if let Some(name) = key.strip_prefix(PARAM_PREFIX) {
                let v = doc.number(key)?.expect("key is present");
                values.insert(name.to_string(), v);
            }
        }
        Ok(Params { values })
    }

    fn accept(&self, method: &str, allowed: &[&str]) -> Result<(), ConfigError> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(ConfigError::invalid(
                &format!("{PARAM_PREFIX}{k}"),
                format!("not a parameter of `{method}` (allowed: {})", allowed.join(", ")),
            )),
            None => Ok(()),
        }
    }

    fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    fn get_or(&self, name: &str, default: f64) -> f64 {
        self.get(name).unwrap_or(default)
    }
}

fn check_range(name: &str, value: f64, ok: bool, expected: &str) -> Result<f64, ConfigError> {
    if ok {
        Ok(value)
    } else {
        Err(ConfigError::invalid(
            &format!("{PARAM_PREFIX}{name}"),
            format!("{value} is out of range ({expected})"),
        ))
    }
}

fn discrete_method(name: &str, params: &Params) -> Result<DiscreteMethod, ConfigError> {
    let method: Method = name
        .parse()
        .map_err(|e: crate::optim::OptimizerError| ConfigError::invalid("method", e.to_string()))?;
    Ok(match method {
        Method::Whiplash | Method::GradientDescent => {
            params.accept(name, &[])?;
            DiscreteMethod::with_defaults(method)
        }
        Method::HeavyBall => {
            params.accept(name, &["beta"])?;
            let beta = params.get_or("beta", 0.9);
            DiscreteMethod::HeavyBall {
                beta: check_range("beta", beta, (0.0..1.0).contains(&beta), "0 <= beta < 1")?,
            }
        }
        Method::Nesterov => {
            params.accept(name, &["mu"])?;
            DiscreteMethod::Nesterov(match params.get("mu") {
                Some(mu) => MomentumSchedule::Constant(check_range("mu", mu, (0.0..1.0).contains(&mu), "0 <= mu < 1")?),
                None => MomentumSchedule::Standard,
            })
        }
        Method::Adam => {
            params.accept(name, &["beta1", "beta2", "epsilon"])?;
            let d = AdamParams::default();
            let beta1 = params.get_or("beta1", d.beta1);
            let beta2 = params.get_or("beta2", d.beta2);
            let epsilon = params.get_or("epsilon", d.epsilon);
            DiscreteMethod::Adam(AdamParams {
                beta1: check_range("beta1", beta1, (0.0..1.0).contains(&beta1), "0 <= beta1 < 1")?,
                beta2: check_range("beta2", beta2, (0.0..1.0).contains(&beta2), "0 <= beta2 < 1")?,
                epsilon: check_range("epsilon", epsilon, epsilon > 0.0, "> 0")?,
            })
        }
    })
}

fn damping_law(name: &str, params: &Params) -> Result<DampingLaw, ConfigError> {
    Ok(match name {
        "whiplash" => {
            params.accept(name, &[])?;
            DampingLaw::Whiplash
        }
        "constant" => {
            params.accept(name, &["gamma"])?;
            let gamma = params.get_or("gamma", 1.0);
            DampingLaw::Constant {
                gamma: check_range("gamma", gamma, gamma >= 0.0, ">= 0")?,
            }
        }
        "nesterov" => {
            params.accept(name, &["alpha"])?;
            let alpha = params.get_or("alpha", 3.0);
            DampingLaw::Nesterov {
                alpha: check_range("alpha", alpha, alpha > 0.0, "> 0")?,
            }
        }
        "attouch" => {
            params.accept(name, &["r", "p"])?;
            let r = params.get_or("r", 1.0);
            let p = params.get_or("p", 4.0);
            DampingLaw::Attouch {
                r: check_range("r", r, r > 0.0, "> 0")?,
                p: check_range("p", p, p >= 2.0, ">= 2")?,
            }
        }
        other => {
            return Err(ConfigError::invalid(
                "method",
                format!("unknown damping law `{other}` (expected whiplash, constant, nesterov or attouch)"),
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "function = rosenbrock\nmethod = whiplash\nstep_size = 1e-5\nmax_iters = 1e6\nx0 = [0, 0]\n";

    #[test]
    fn minimal_discrete_config() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.mode(), Mode::Discrete);
        assert_eq!(cfg.step_size, 1e-5);
        assert_eq!(
            cfg.dynamics,
            Dynamics::Discrete {
                method: DiscreteMethod::Whiplash,
                max_iters: 1_000_000
            }
        );
        assert_eq!(cfg.x0, vec![0.0, 0.0]);
        assert_eq!(cfg.record_stride, DEFAULT_RECORD_STRIDE);
        assert_eq!(cfg.id, "run");
    }

    #[test]
    fn negative_step_size_names_the_key() {
        let err = parse_config(&MINIMAL.replace("1e-5", "-1")).unwrap_err();
        assert!(err.to_string().contains("step_size"), "{err}");
    }

    #[test]
    fn errors_carry_key_paths() {
        let err = parse_config(&format!("{MINIMAL}stepsize = 1\n")).unwrap_err();
        assert_eq!(err, ConfigError::UnknownKey("stepsize".into()));

        let err = parse_config(&MINIMAL.replace("max_iters = 1e6", "max_iters = 2.5")).unwrap_err();
        assert!(err.to_string().contains("max_iters"), "{err}");

        let err = parse_config(&MINIMAL.replace("x0 = [0, 0]", "x0 = origin")).unwrap_err();
        assert!(err.to_string().contains("x0"), "{err}");

        let err = parse_config(&MINIMAL.replace("whiplash", "lbfgs")).unwrap_err();
        assert!(err.to_string().contains("method") && err.to_string().contains("lbfgs"), "{err}");

        let err = parse_config(&MINIMAL.replace("rosenbrock", "beale")).unwrap_err();
        assert!(err.to_string().contains("function"), "{err}");

        let err = parse_config(&MINIMAL.replace("function = rosenbrock\n", "")).unwrap_err();
        assert_eq!(err, ConfigError::Missing("function".into()));

        let err = parse_config(&format!("{MINIMAL}method.params.beta = 0.5\n")).unwrap_err();
        assert!(err.to_string().contains("method.params.beta"), "{err}");

        let err = parse_config("function rosenbrock\n").unwrap_err();
        assert!(matches!(err, ConfigError::Syntax { line: 1, .. }));
    }

    #[test]
    fn method_parameters() {
        let cfg = parse_config(
            &MINIMAL.replace("whiplash", "heavyball").replace("x0", "method.params.beta = 0.5\nx0"),
        )
        .unwrap();
        assert!(matches!(cfg.dynamics, Dynamics::Discrete { method: DiscreteMethod::HeavyBall { beta }, .. } if beta == 0.5));

        let err = parse_config(&MINIMAL.replace("whiplash", "heavyball").replace("x0", "method.params.beta = 1.5\nx0"))
            .unwrap_err();
        assert!(err.to_string().contains("method.params.beta"), "{err}");
    }

    #[test]
    fn overrides_win() {
        let cfg = parse_config_with_overrides(MINIMAL, &["step_size=2e-5".into(), "x0=[1,2]".into()]).unwrap();
        assert_eq!(cfg.step_size, 2e-5);
        assert_eq!(cfg.x0, vec![1.0, 2.0]);
    }

    #[test]
    fn continuous_config_defaults() {
        let cfg = parse_config("function = rosenbrock\nmethod = whiplash\nstep_size = 0.001\nt_end = 5\nx0 = [2, 2]\n")
            .unwrap();
        match cfg.dynamics {
            Dynamics::Continuous { law, t_end, v0, integrator } => {
                assert_eq!(law, DampingLaw::Whiplash);
                assert_eq!(t_end, 5.0);
                assert_eq!(v0, vec![-1000.0, -1000.0]);
                assert_eq!(integrator, Integrator::ExplicitEuler);
            }
            other => panic!("{other:?}"),
        }
        let err = parse_config("function = rosenbrock\nmethod = whiplash\nstep_size = 0.001\nt_end = 5\nmax_iters = 5\nx0 = [2, 2]\n")
            .unwrap_err();
        assert!(err.to_string().contains("mode"));
    }

    #[test]
    fn preset_fig6a_expands() {
        let cfg = parse_config("preset = fig6a\n").unwrap();
        assert_eq!(cfg.id, "fig6a");
        assert_eq!(cfg.step_size, 0.001);
        assert_eq!(cfg.x0, vec![12.0, -3.0]);
        match &cfg.dynamics {
            Dynamics::Continuous { law, v0, integrator, .. } => {
                assert_eq!(*law, DampingLaw::Whiplash);
                assert_eq!(v0, &vec![-1000.0, -1000.0]);
                assert_eq!(*integrator, Integrator::ExplicitEuler);
            }
            other => panic!("{other:?}"),
        }
        // File keys override preset keys.
        let cfg = parse_config("preset = fig6a\nstep_size = 1e-4\n").unwrap();
        assert_eq!(cfg.step_size, 1e-4);
    }

    #[test]
    fn values_parse() {
        assert_eq!(parse_value("[1, -2.5]").unwrap(), Value::List(vec![1.0, -2.5]));
        assert_eq!(parse_value("\"a b\"").unwrap(), Value::Text("a b".into()));
        assert_eq!(parse_value("quadratic:1,100").unwrap(), Value::Text("quadratic:1,100".into()));
        assert_eq!(parse_value("1e6").unwrap(), Value::Number(1e6));
        assert!(parse_value("[1, x]").is_err());
        assert!(parse_value("[1, 2").is_err());
    }
}
