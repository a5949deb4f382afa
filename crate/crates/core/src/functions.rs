//! Benchmark cost functions with analytic derivatives.
//!
//! Every objective implements [`CostFunction`]. Gradients are hand-derived;
//! [`finite_difference_grad`] is provided as an independent cross-check and
//! is never used on the optimization path.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::spectral;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Symmetry tolerance applied when validating user-supplied matrices.
const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FunctionError {
    #[error("quadratic matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("quadratic matrix failed the symmetry check: |A[{i}][{j}] - A[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("quadratic matrix failed the positive-definite check: smallest eigenvalue {min_eigenvalue}")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("non-finite function value {value} at {point:?}")]
    NonFinite { value: f64, point: Vec<f64> },
    #[error("finite-difference step must be positive, got {0}")]
    BadStep(f64),
    #[error("Lipschitz constant must be positive, got {0}")]
    NonPositiveLipschitz(f64),
    #[error("unknown function `{0}` (expected rosenbrock, sphere[:d] or quadratic:<diag>)")]
    UnknownName(String),
    #[error("malformed function spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
}

/// An objective `f: R^d -> R` with an analytic gradient.
///
/// Implementations are immutable after construction, so a single value can be
/// shared across concurrent runs.
pub trait CostFunction: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn dimension(&self) -> usize;

    fn value(&self, x: &DVector<f64>) -> f64;

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64>;

    /// Analytic Hessian, if the function provides one.
    fn hessian(&self, _x: &DVector<f64>) -> Option<DMatrix<f64>> {
        None
    }

    /// Known global minimizer `x*`.
    fn minimizer(&self) -> Option<DVector<f64>> {
        None
    }

    /// Known minimum value `f*`.
    fn min_value(&self) -> Option<f64> {
        None
    }
}

/// Shared handle used by the harness.
pub type SharedFunction = Arc<dyn CostFunction>;

/// Rosenbrock's banana function `(1 - x)^2 + 100 (y - x^2)^2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rosenbrock;

pub fn rosenbrock() -> Rosenbrock {
    Rosenbrock
}

impl CostFunction for Rosenbrock {
    fn name(&self) -> &str {
        "rosenbrock"
    }

    fn dimension(&self) -> usize {
        2
    }

    fn value(&self, p: &DVector<f64>) -> f64 {
        let (x, y) = (p[0], p[1]);
        let a = 1.0 - x;
        let b = y - x * x;
        a * a + 100.0 * b * b
    }

    fn gradient(&self, p: &DVector<f64>) -> DVector<f64> {
        let (x, y) = (p[0], p[1]);
        let b = y - x * x;
        DVector::from_vec(vec![-2.0 * (1.0 - x) - 400.0 * x * b, 200.0 * b])
    }

    fn hessian(&self, p: &DVector<f64>) -> Option<DMatrix<f64>> {
        let (x, y) = (p[0], p[1]);
        let dxx = 2.0 - 400.0 * y + 1200.0 * x * x;
        let dxy = -400.0 * x;
        Some(DMatrix::from_row_slice(2, 2, &[dxx, dxy, dxy, 200.0]))
    }

    fn minimizer(&self) -> Option<DVector<f64>> {
        Some(DVector::from_vec(vec![1.0, 1.0]))
    }

    fn min_value(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(x) = sum x_i^2`, minimized at the origin.
#[derive(Debug, Clone, Copy)]
pub struct Sphere {
    dim: usize,
}

pub fn sphere(dim: usize) -> Sphere {
    assert!(dim > 0, "sphere dimension must be positive");
    Sphere { dim }
}

impl CostFunction for Sphere {
    fn name(&self) -> &str {
        "sphere"
    }

    fn dimension(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &DVector<f64>) -> f64 {
        x.norm_squared()
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        x * 2.0
    }

    fn hessian(&self, _x: &DVector<f64>) -> Option<DMatrix<f64>> {
        Some(DMatrix::identity(self.dim, self.dim) * 2.0)
    }

    fn minimizer(&self) -> Option<DVector<f64>> {
        Some(DVector::zeros(self.dim))
    }

    fn min_value(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(x) = 1/2 x^T A x - b^T x` with `A` symmetric positive definite.
#[derive(Debug, Clone)]
pub struct Quadratic {
    a: DMatrix<f64>,
    b: DVector<f64>,
    minimizer: DVector<f64>,
    min_value: f64,
}

/// Builds a quadratic, rejecting `A` that is not square, symmetric, and
/// positive definite.
pub fn quadratic(a: DMatrix<f64>, b: DVector<f64>) -> Result<Quadratic, FunctionError> {
    if !a.is_square() {
        return Err(FunctionError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let n = a.nrows();
    if b.len() != n {
        return Err(FunctionError::DimensionMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (a[(i, j)] - a[(j, i)]).abs();
            if gap > SYMMETRY_TOL * (1.0 + a[(i, j)].abs()) {
                return Err(FunctionError::NotSymmetric { i, j, gap });
            }
        }
    }
    let eig = spectral::symmetric_eigenvalues(&a).map_err(|_| FunctionError::NotSymmetric {
        i: 0,
        j: 0,
        gap: f64::NAN,
    })?;
    let min_eigenvalue = eig[0];
    if !(min_eigenvalue > 0.0) {
        return Err(FunctionError::NotPositiveDefinite { min_eigenvalue });
    }
    let minimizer = a
        .clone()
        .cholesky()
        .ok_or(FunctionError::NotPositiveDefinite { min_eigenvalue })?
        .solve(&b);
    let min_value = -0.5 * b.dot(&minimizer);
    Ok(Quadratic {
        a,
        b,
        minimizer,
        min_value,
    })
}

/// Diagonal quadratic with `b = 0`.
pub fn diagonal_quadratic(diag: &[f64]) -> Result<Quadratic, FunctionError> {
    let n = diag.len();
    quadratic(
        DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
        DVector::zeros(n),
    )
}

impl Quadratic {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn linear_term(&self) -> &DVector<f64> {
        &self.b
    }
}

impl CostFunction for Quadratic {
    fn name(&self) -> &str {
        "quadratic"
    }

    fn dimension(&self) -> usize {
        self.b.len()
    }

    fn value(&self, x: &DVector<f64>) -> f64 {
        0.5 * x.dot(&(&self.a * x)) - self.b.dot(x)
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.a * x - &self.b
    }

    fn hessian(&self, _x: &DVector<f64>) -> Option<DMatrix<f64>> {
        Some(self.a.clone())
    }

    fn minimizer(&self) -> Option<DVector<f64>> {
        Some(self.minimizer.clone())
    }

    fn min_value(&self) -> Option<f64> {
        Some(self.min_value)
    }
}

/// Resolves a function by name: `rosenbrock`, `sphere`, `sphere:<d>`, or
/// `quadratic:<d1>,<d2>,...` (diagonal, `b = 0`).
pub fn by_name(spec: &str) -> Result<SharedFunction, FunctionError> {
    let spec = spec.trim();
    let (head, tail) = match spec.split_once(':') {
        Some((h, t)) => (h.trim(), Some(t.trim())),
        None => (spec, None),
    };
    let bad = |reason: &str| FunctionError::BadSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    match (head, tail) {
        ("rosenbrock", None) => Ok(Arc::new(Rosenbrock)),
        ("sphere", None) => Ok(Arc::new(sphere(2))),
        ("sphere", Some(d)) => {
            let dim: usize = d.parse().map_err(|_| bad("dimension is not an integer"))?;
            if dim == 0 {
                return Err(bad("dimension must be positive"));
            }
            Ok(Arc::new(sphere(dim)))
        }
        ("quadratic", Some(diag)) => {
            let values = diag
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("diagonal entries must be numbers"))?;
            if values.is_empty() {
                return Err(bad("empty diagonal"));
            }
            Ok(Arc::new(diagonal_quadratic(&values)?))
        }
        ("quadratic", None) => Err(bad("quadratic needs a diagonal, e.g. quadratic:1,100")),
        _ => Err(FunctionError::UnknownName(spec.to_string())),
    }
}

/// Central-difference gradient, `(f(x + h e_i) - f(x - h e_i)) / 2h`.
pub fn finite_difference_grad(
    f: &dyn CostFunction,
    x: &DVector<f64>,
    h: f64,
) -> Result<DVector<f64>, FunctionError> {
    if !(h > 0.0) {
        return Err(FunctionError::BadStep(h));
    }
    let mut grad = DVector::zeros(x.len());
    let mut probe = x.clone();
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let up = checked_value(f, &probe)?;
        probe[i] = x[i] - h;
        let down = checked_value(f, &probe)?;
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * h);
    }
    Ok(grad)
}

/// Finite-difference Jacobian of the gradient (a Hessian estimate), not
/// symmetrized.
pub fn finite_difference_hessian(
    f: &dyn CostFunction,
    x: &DVector<f64>,
    h: f64,
) -> Result<DMatrix<f64>, FunctionError> {
    if !(h > 0.0) {
        return Err(FunctionError::BadStep(h));
    }
    let n = x.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut probe = x.clone();
    for j in 0..n {
        probe[j] = x[j] + h;
        let up = f.gradient(&probe);
        probe[j] = x[j] - h;
        let down = f.gradient(&probe);
        probe[j] = x[j];
        for i in 0..n {
            let d = (up[i] - down[i]) / (2.0 * h);
            if !d.is_finite() {
                return Err(FunctionError::NonFinite {
                    value: d,
                    point: x.iter().copied().collect(),
                });
            }
            jac[(i, j)] = d;
        }
    }
    Ok(jac)
}

fn checked_value(f: &dyn CostFunction, x: &DVector<f64>) -> Result<f64, FunctionError> {
    let v = f.value(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(FunctionError::NonFinite {
            value: v,
            point: x.iter().copied().collect(),
        })
    }
}

/// Largest step size `1/L` for which plain gradient steps are guaranteed to
/// make progress on an `L`-smooth function.
pub fn max_step_size(lipschitz: f64) -> Result<f64, FunctionError> {
    if lipschitz > 0.0 {
        Ok(1.0 / lipschitz)
    } else {
        Err(FunctionError::NonPositiveLipschitz(lipschitz))
    }
}
