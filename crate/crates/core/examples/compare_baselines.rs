//! Every optimizer on the same Rosenbrock problem, ranked by final value,
//! then the same methods on an ill-conditioned quadratic.

use whiplash::functions::{diagonal_quadratic, rosenbrock, CostFunction};
use whiplash::nalgebra::DVector;
use whiplash::optim::{run_default, Method, OptimizerConfig};

fn table(f: &dyn CostFunction, cfg: &OptimizerConfig) -> Result<(), Box<dyn std::error::Error>> {
    let mut rows = Vec::new();
    for m in Method::ALL {
        rows.push(run_default(m, f, cfg)?);
    }
    rows.sort_by(|a, b| a.final_f.total_cmp(&b.final_f));
    println!("{:<10} {:>14} {:>8} verdict", "method", "final f", "iters");
    for r in rows {
        println!("{:<10} {:>14.6e} {:>8} {}", r.method, r.final_f, r.iterations_used, r.verdict);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("rosenbrock from (5, -3), s = 1e-5, 20000 iterations");
    table(&rosenbrock(), &OptimizerConfig::new(1e-5, 20_000, DVector::from_vec(vec![5.0, -3.0])))?;

    println!("\ndiag(1, 100) from (1, 1), s = 1e-3, 5000 iterations");
    let q = diagonal_quadratic(&[1.0, 100.0])?;
    table(&q, &OptimizerConfig::new(1e-3, 5000, DVector::from_vec(vec![1.0, 1.0])))?;
    Ok(())
}
