//! Discrete whiplash descent from several starts, with the momentum norm
//! and damping coefficient sampled along the run.

use whiplash::functions::rosenbrock;
use whiplash::nalgebra::DVector;
use whiplash::optim::{whiplash_descent, OptimizerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = rosenbrock();
    let target = DVector::from_vec(vec![1.0, 1.0]);
    for x0 in [[0.0, 0.0], [12.0, 3.0], [-3.0, 7.0], [-7.0, 17.0]] {
        let cfg = OptimizerConfig::new(1e-5, 20_000, DVector::from_column_slice(&x0)).with_dist_tol(1e-2);
        let r = whiplash_descent(&f, &cfg)?;
        println!(
            "x0 = {x0:?}: {} after {} iterations, f = {:.3e}, |x - x*| = {:.3e}",
            r.verdict,
            r.iterations_used,
            r.final_f,
            r.distance_to(&target)
        );
    }

    let cfg = OptimizerConfig::new(1e-5, 20_000, DVector::from_vec(vec![0.0, 0.0])).with_record_stride(2000);
    let r = whiplash_descent(&f, &cfg)?;
    println!("\nfrom the origin, fixed budget:");
    println!("{:>6} {:>12} {:>12} {:>12}", "k", "|z|", "alpha", "f");
    for rec in &r.records {
        println!("{:>6} {:>12.4e} {:>12.8} {:>12.4e}", rec.k, rec.z.norm(), rec.alpha, rec.f_value);
    }
    Ok(())
}
