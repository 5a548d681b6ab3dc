// Continuous-time diffusion integrated with RK4 converges to the
// weighted mean.

use hypersync::dynamics::{simulate_continuous, NodeDynamics};
use hypersync::operator::build_operator;
use hypersync::samples;

pub fn run_example() -> hypersync::Result<()> {
    let h = samples::h1();
    let op = build_operator(&h);
    let x0 = [1.0, 0.0, 0.0, 0.0, -1.0];
    let traj = simulate_continuous(&op, &NodeDynamics::diffusion(), 0.5, &x0, 20.0, 1e-3, 5000)?;
    let all: Vec<usize> = (0..h.n_vertices()).collect();
    for (t, k) in traj.times().iter().zip(0..) {
        println!("t = {t:>5}: spread {:.3e}", traj.spread(k, &all));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
