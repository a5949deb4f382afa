//! Finds where discrete whiplash stops being stable as the step grows.

use whiplash::harness::{parse_config, step_size_sweep, SWEEP_HEADER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = parse_config(
        "id = sweep\nfunction = rosenbrock\nmethod = whiplash\nstep_size = 1e-5\n\
         max_iters = 200000\nx0 = [12, 3]\nstop.dist_tol = 1e-2\n",
    )?;
    let sizes = [1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6, 1e-6];
    let sweep = step_size_sweep(&base, &sizes)?;
    println!("{SWEEP_HEADER}");
    print!("{}", sweep.csv().lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    match sweep.largest_stable {
        Some(s) => println!("largest non-diverging step size: {s:e}"),
        None => println!("every step size diverged"),
    }
    Ok(())
}
