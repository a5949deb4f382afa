//! Linearization and spectral diagnostics: Hessians, symmetric eigenvalues,
//! condition numbers, and the shifted spectrum of `A - eta I`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::functions::{self, CostFunction};

/// Step used when a function has no analytic Hessian.
pub const HESSIAN_FD_STEP: f64 = 1e-5;

const SYMMETRY_TOL: f64 = 1e-9;
const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: entry ({i},{j}) differs from its transpose by {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is indefinite or singular (eigenvalues {lambda_min} .. {lambda_max}); a saddle or degenerate point")]
    Indefinite { lambda_min: f64, lambda_max: f64 },
    #[error("jacobi rotations did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("hessian estimate failed: {0}")]
    Hessian(#[from] functions::FunctionError),
}

/// Eigenvalues of a (possibly shifted) symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub condition_number: f64,
    pub shift: f64,
}

impl SpectrumReport {
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub const CSV_HEADER: &'static str = "lambda_min,lambda_max,kappa,eta";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            self.lambda_min(),
            self.lambda_max(),
            self.condition_number,
            self.shift
        )
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>14} {:>14} {:>14} {:>8}", "lambda_min", "lambda_max", "kappa", "eta")?;
        write!(
            f,
            "{:>14.6} {:>14.6} {:>14.6} {:>8.3}",
            self.lambda_min(),
            self.lambda_max(),
            self.condition_number,
            self.shift
        )
    }
}

/// Hessian of `f` at `x`, symmetrized as `(H + H^T) / 2`.
///
/// Uses the analytic Hessian when available and otherwise the
/// finite-difference Jacobian of the gradient.
pub fn hessian_at(f: &dyn CostFunction, x: &DVector<f64>) -> Result<DMatrix<f64>, SpectralError> {
    let h = match f.hessian(x) {
        Some(h) => h,
        None => functions::finite_difference_hessian(f, x, HESSIAN_FD_STEP)?,
    };
    if h.iter().any(|v| !v.is_finite()) {
        return Err(SpectralError::NonFinite);
    }
    Ok((&h + h.transpose()) * 0.5)
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<(), SpectralError> {
    if !m.is_square() {
        return Err(SpectralError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(SpectralError::NonFinite);
    }
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (m[(i, j)] - m[(j, i)]).abs();
            if gap > SYMMETRY_TOL {
                return Err(SpectralError::NotSymmetric { i, j, gap });
            }
        }
    }
    Ok(())
}

/// Eigenvalues of a symmetric matrix in ascending order.
///
/// 2x2 matrices use the closed form; larger ones use cyclic Jacobi rotations
/// until the off-diagonal Frobenius norm is at most `1e-12` (relative to the
/// matrix norm when that exceeds one).
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>, SpectralError> {
    check_symmetric(m)?;
    let mut eig = match m.nrows() {
        0 => Vec::new(),
        1 => vec![m[(0, 0)]],
        2 => eigen_2x2(m[(0, 0)], 0.5 * (m[(0, 1)] + m[(1, 0)]), m[(1, 1)]).to_vec(),
        _ => jacobi_eigenvalues(m)?,
    };
    eig.sort_by(|a, b| a.total_cmp(b));
    Ok(eig)
}

// Larger-magnitude root first, the other recovered from the determinant to
// avoid cancellation when the eigenvalues are widely separated.
fn eigen_2x2(a: f64, b: f64, d: f64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b);
    let big = if mean >= 0.0 { mean + radius } else { mean - radius };
    let det = a * d - b * b;
    let small = if big != 0.0 { det / big } else { mean - radius };
    [small, big]
}

fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>, SpectralError> {
    let n = m.nrows();
    let mut a = m.clone();
    let scale = a.norm().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_TOL * scale {
            return Ok((0..n).map(|i| a[(i, i)]).collect());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- J^T A J for the (p, q) plane rotation.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(SpectralError::NoConvergence(JACOBI_MAX_SWEEPS))
}

/// Spectral condition number `lambda_max / lambda_min` of a symmetric
/// positive-definite matrix.
pub fn condition_number(m: &DMatrix<f64>) -> Result<f64, SpectralError> {
    let eig = symmetric_eigenvalues(m)?;
    let (lo, hi) = (eig[0], *eig.last().unwrap());
    if !(lo > 0.0) {
        return Err(SpectralError::Indefinite {
            lambda_min: lo,
            lambda_max: hi,
        });
    }
    Ok(hi / lo)
}

/// Spectrum of `M - eta I`.
///
/// The condition number is reported for the shifted spectrum and is `NaN`
/// when the shifted matrix is not positive definite.
pub fn shifted_spectrum(m: &DMatrix<f64>, eta: f64) -> Result<SpectrumReport, SpectralError> {
    let eigenvalues: Vec<f64> = symmetric_eigenvalues(m)?
        .into_iter()
        .map(|l| l - eta)
        .collect();
    let (lo, hi) = (eigenvalues[0], *eigenvalues.last().unwrap());
    let condition_number = if lo > 0.0 { hi / lo } else { f64::NAN };
    Ok(SpectrumReport {
        eigenvalues,
        condition_number,
        shift: eta,
    })
}

/// Guaranteed decay exponent `sigma = -gamma/2 - eta` of the shifted
/// linearization with constant damping `gamma`.
pub fn linearized_decay_rate(gamma: f64, eta: f64) -> f64 {
    -gamma / 2.0 - eta
}
