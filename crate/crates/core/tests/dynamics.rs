use nalgebra::DVector;

use whiplash::dynamics::{lyapunov_w, simulate, DampingLaw, Integrator, SimulationSpec, Trajectory};
use whiplash::functions::{diagonal_quadratic, rosenbrock, CostFunction};
use whiplash::lyapunov::monotonicity_report;

const BOTH: [Integrator; 2] = [Integrator::ExplicitEuler, Integrator::SymplecticEuler];

fn spec(law: DampingLaw, x0: &[f64], v0: &[f64], step: f64, t_end: f64, integrator: Integrator) -> SimulationSpec {
    SimulationSpec {
        id: "t".into(),
        law,
        x0: DVector::from_column_slice(x0),
        v0: DVector::from_column_slice(v0),
        step,
        t_end,
        integrator,
        record_stride: 1,
    }
}

// x'' + g x' + l x = 0 with x(0) = 1, x'(0) = 0, underdamped.
fn damped_oscillator(g: f64, l: f64, t: f64) -> f64 {
    let w = (l - g * g / 4.0).sqrt();
    (-g * t / 2.0).exp() * ((w * t).cos() + g / (2.0 * w) * (w * t).sin())
}

#[test]
fn steppers_are_first_order_on_a_damped_quadratic() {
    let (g, l) = (1.0, 4.0);
    let q = diagonal_quadratic(&[l]).unwrap();
    for integrator in BOTH {
        let err = |h: f64| {
            let traj = simulate(&q, &spec(DampingLaw::Constant { gamma: g }, &[1.0], &[0.0], h, 2.0, integrator)).unwrap();
            let last = traj.last();
            assert!((last.t - 2.0).abs() < 1e-9);
            (last.x[0] - damped_oscillator(g, l, last.t)).abs()
        };
        for h in [1e-2, 1e-3] {
            let ratio = err(h) / err(h / 2.0);
            assert!(ratio >= 1.8, "{integrator:?} h={h}: ratio {ratio}");
        }
    }
}

fn max_relative_energy_drift(traj: &Trajectory, f: &dyn CostFunction) -> (f64, f64) {
    let w0 = traj.samples[0].lyapunov.unwrap();
    let drift = |s: &whiplash::dynamics::Sample| {
        let state = whiplash::dynamics::ContinuousState::new(s.t, s.x.clone(), s.v.clone());
        (lyapunov_w(&state, f).unwrap() - w0).abs() / w0
    };
    let max = traj.samples.iter().map(drift).fold(0.0, f64::max);
    (max, drift(traj.last()))
}

#[test]
fn symplectic_energy_stays_bounded_while_explicit_energy_grows() {
    let q = diagonal_quadratic(&[1.0, 1.0]).unwrap();
    let undamped = DampingLaw::Constant { gamma: 0.0 };
    let run = |i| simulate(&q, &spec(undamped, &[1.0, 0.0], &[0.0, 0.0], 1e-3, 10.0, i)).unwrap();
    let (symplectic_max, _) = max_relative_energy_drift(&run(Integrator::SymplecticEuler), &q);
    let (_, explicit_final) = max_relative_energy_drift(&run(Integrator::ExplicitEuler), &q);
    // Explicit Euler multiplies the energy by (1 + h^2) per step.
    let growth = (1.0f64 + 1e-6).powi(10_000) - 1.0;
    assert!((explicit_final - growth).abs() <= 1e-9, "{explicit_final} vs {growth}");
    assert!(symplectic_max <= 1e-3, "{symplectic_max}");
    assert!(explicit_final >= 10.0 * symplectic_max);
}

#[test]
fn whiplash_damping_is_at_least_one_everywhere() {
    let f = rosenbrock();
    for integrator in BOTH {
        let traj = simulate(&f, &spec(DampingLaw::Whiplash, &[2.0, -1.0], &[-10.0, 3.0], 1e-4, 5.0, integrator)).unwrap();
        assert!(traj.samples.iter().all(|s| s.gamma >= 1.0));
    }
}

#[test]
fn simulation_is_deterministic() {
    let f = rosenbrock();
    let s = spec(DampingLaw::Whiplash, &[-4.0, 17.0], &[-1000.0, -1000.0], 1e-4, 2.0, Integrator::ExplicitEuler);
    assert_eq!(simulate(&f, &s).unwrap(), simulate(&f, &s).unwrap());
}

#[test]
fn nesterov_law_starts_one_step_in() {
    let q = diagonal_quadratic(&[1.0, 2.0]).unwrap();
    let traj = simulate(&q, &spec(DampingLaw::Nesterov { alpha: 3.0 }, &[1.0, 1.0], &[0.0, 0.0], 1e-3, 1.0, Integrator::SymplecticEuler))
        .unwrap();
    assert_eq!(traj.samples[0].t, 1e-3);
    for s in &traj.samples {
        assert!((s.gamma - 3.0 / s.t).abs() <= 1e-12 * s.gamma);
    }
}

#[test]
fn coarse_step_blow_up_is_recorded_not_raised() {
    let traj = simulate(
        &rosenbrock(),
        &spec(DampingLaw::Whiplash, &[12.0, -3.0], &[-1000.0, -1000.0], 1e-3, 50.0, Integrator::ExplicitEuler),
    )
    .unwrap();
    let div = traj.divergence.as_ref().expect("h = 1e-3 blows up from (12, -3)");
    assert!(div.step < 20);
    assert!(div.last_finite.is_finite());
    assert!(traj.samples.iter().all(|s| s.x.iter().all(|c| c.is_finite())));
}

fn fine_step_run(x0: [f64; 2], integrator: Integrator) -> Trajectory {
    simulate(
        &rosenbrock(),
        &spec(DampingLaw::Whiplash, &x0, &[-1000.0, -1000.0], 1e-4, 50.0, integrator),
    )
    .unwrap()
}

// At h = 1e-4 both starts settle at the minimizer; h = 1e-3 does not
// (see the acceptance suite).
#[test]
fn fine_step_whiplash_flow_reaches_the_minimizer() {
    let target = DVector::from_vec(vec![1.0, 1.0]);
    for x0 in [[12.0, -3.0], [-4.0, 17.0]] {
        let traj = fine_step_run(x0, Integrator::ExplicitEuler);
        assert!(!traj.diverged());
        let dist = (&traj.last().x - &target).norm();
        assert!(dist <= 0.1, "{x0:?}: {dist}");

        let gammas: Vec<f64> = traj.samples.iter().map(|s| s.gamma).collect();
        let (peak_index, peak) = gammas
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (i, &g)| if g > best.1 { (i, g) } else { best });
        assert!(peak_index * 10 < gammas.len(), "{x0:?}: peak at {peak_index}");
        assert!(*gammas.last().unwrap() <= 0.01 * peak);
    }
}

#[test]
fn fine_step_symplectic_energy_is_monotone() {
    for x0 in [[12.0, -3.0], [-4.0, 17.0]] {
        let traj = fine_step_run(x0, Integrator::SymplecticEuler);
        assert!(!traj.diverged());
        let report = monotonicity_report(&traj);
        assert!(report.is_empty(), "{x0:?}: {:?}", &report[..report.len().min(3)]);
    }
}
