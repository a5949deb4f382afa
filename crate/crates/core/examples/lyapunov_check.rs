//! Calibrates the energy tolerance and audits whiplash flows for monotone
//! energy under both steppers.

use whiplash::dynamics::{simulate, DampingLaw, Integrator, SimulationSpec};
use whiplash::functions::rosenbrock;
use whiplash::lyapunov::{monotonicity_report_with, LyapunovTolerance};
use whiplash::nalgebra::DVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = rosenbrock();
    for step in [1e-4, 1e-3] {
        let tol = LyapunovTolerance::calibrate(step);
        println!("h = {step:e}: C = {:.4e}", tol.c);
        for integrator in [Integrator::SymplecticEuler, Integrator::ExplicitEuler] {
            let spec = SimulationSpec {
                id: "audit".into(),
                law: DampingLaw::Whiplash,
                x0: DVector::from_vec(vec![-4.0, 17.0]),
                v0: DVector::from_vec(vec![-1000.0, -1000.0]),
                step,
                t_end: 50.0,
                integrator,
                record_stride: 1,
            };
            let traj = simulate(&f, &spec)?;
            let report = monotonicity_report_with(&traj, &tol);
            println!(
                "  {integrator:?}: {} samples, diverged = {}, {} violations",
                traj.samples.len(),
                traj.diverged(),
                report.len()
            );
            for v in report.iter().take(3) {
                println!("    sample {}: rise {:.3e} > {:.3e}", v.index, v.increase, v.tolerance);
            }
        }
    }
    Ok(())
}
