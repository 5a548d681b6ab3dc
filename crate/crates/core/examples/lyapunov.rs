// Transverse Lyapunov estimates along each eigendirection for logistic
// maps sitting at their fixed point.

use hypersync::dynamics::{simulate_discrete, NodeDynamics};
use hypersync::operator::{build_operator, fmt_num, spectrum};
use hypersync::samples;
use hypersync::stability::lyapunov_sigma;

pub fn run_example() -> hypersync::Result<()> {
    let h = samples::h5();
    let op = build_operator(&h);
    let spec = spectrum(&op)?;
    let dyn_ = NodeDynamics::logistic(4.0);
    let eps = 0.1;
    let all: Vec<usize> = (0..h.n_vertices()).collect();

    let traj = simulate_discrete(&op, &dyn_, eps, &vec![0.75; h.n_vertices()], 500, 1)?;
    for i in 0..spec.len() {
        let est = lyapunov_sigma(&traj, &all, &spec, &dyn_, eps, i, 1e-12)?;
        println!(
            "lambda {:>3}: sigma {:+.6} (log 2|1+eps lambda| = {:+.6}) {:?}",
            fmt_num(est.lambda),
            est.sigma_infinity,
            (2.0 * (1.0 + eps * est.lambda).abs()).ln(),
            est.verdict
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
