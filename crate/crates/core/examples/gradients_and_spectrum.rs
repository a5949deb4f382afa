//! Analytic gradients against finite differences, and the Hessian spectrum
//! of Rosenbrock's function along a few points.

use whiplash::functions::{by_name, finite_difference_grad, DEFAULT_FD_STEP};
use whiplash::nalgebra::DVector;
use whiplash::spectral::{hessian_at, shifted_spectrum, SpectrumReport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = by_name("rosenbrock")?;
    println!("point             |grad - fd|/|grad|");
    for p in [[-1.5, 2.0], [0.0, 0.0], [2.0, 1.0], [1.2, 1.44]] {
        let x = DVector::from_column_slice(&p);
        let g = f.gradient(&x);
        let fd = finite_difference_grad(f.as_ref(), &x, DEFAULT_FD_STEP)?;
        println!("{p:>16?}  {:.3e}", (&g - &fd).norm() / g.norm().max(1e-300));
    }

    println!("\n{}", SpectrumReport::CSV_HEADER);
    for p in [[1.0, 1.0], [0.0, 0.0], [-1.0, 1.0]] {
        let h = hessian_at(f.as_ref(), &DVector::from_column_slice(&p))?;
        println!("{}", shifted_spectrum(&h, 0.0)?.csv_row());
    }

    let h = hessian_at(f.as_ref(), &DVector::from_vec(vec![1.0, 1.0]))?;
    for eta in [0.0, 0.1, 0.3] {
        println!("\nshift eta = {eta}\n{}", shifted_spectrum(&h, eta)?);
    }
    Ok(())
}
