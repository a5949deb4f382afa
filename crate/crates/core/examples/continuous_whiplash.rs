//! Integrates the whiplash flow on Rosenbrock's function with both steppers
//! and prints the damping and energy along the way.

use whiplash::dynamics::{simulate, DampingLaw, Integrator, SimulationSpec};
use whiplash::functions::rosenbrock;
use whiplash::nalgebra::DVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = rosenbrock();
    for integrator in [Integrator::ExplicitEuler, Integrator::SymplecticEuler] {
        let spec = SimulationSpec {
            id: "flow".into(),
            law: DampingLaw::Whiplash,
            x0: DVector::from_vec(vec![12.0, -3.0]),
            v0: DVector::from_vec(vec![-1000.0, -1000.0]),
            step: 1e-4,
            t_end: 50.0,
            integrator,
            record_stride: 50_000,
        };
        let traj = simulate(&f, &spec)?;
        println!("{integrator:?}: {} steps, diverged = {}", traj.steps_taken, traj.diverged());
        println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "t", "x0", "x1", "gamma", "W");
        for s in &traj.samples {
            println!(
                "{:>8.2} {:>12.6} {:>12.6} {:>12.4e} {:>12.4e}",
                s.t,
                s.x[0],
                s.x[1],
                s.gamma,
                s.lyapunov.unwrap_or(f64::NAN)
            );
        }
        println!();
    }

    // The same start at h = 1e-3 leaves the finite range within a few steps.
    let coarse = SimulationSpec {
        id: "coarse".into(),
        law: DampingLaw::Whiplash,
        x0: DVector::from_vec(vec![12.0, -3.0]),
        v0: DVector::from_vec(vec![-1000.0, -1000.0]),
        step: 1e-3,
        t_end: 50.0,
        integrator: Integrator::ExplicitEuler,
        record_stride: 1,
    };
    if let Some(div) = simulate(&f, &coarse)?.divergence {
        println!("h = 1e-3: diverged at step {}, last finite x = {:?}", div.step, div.last_finite.x.as_slice());
    }
    Ok(())
}
