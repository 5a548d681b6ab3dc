// Chaotic logistic maps coupled on a hypergraph: a unit that starts
// synchronized stays synchronized.

use hypersync::dynamics::{simulate_discrete, sync_report, NodeDynamics};
use hypersync::operator::build_operator;
use hypersync::{samples, WeightPreset};

pub fn run_example() -> hypersync::Result<()> {
    // normalized weights keep x + ε𝔏x inside [0, 1]
    let h = samples::h1().with_preset(WeightPreset::NORMALIZED);
    let op = build_operator(&h);
    let unit = h.vertex_set(&["1", "2"])?;

    let x0 = [0.31, 0.31, 0.77, 0.12, 0.58];
    let traj = simulate_discrete(&op, &NodeDynamics::logistic(4.0), 0.3, &x0, 1000, 1)?;
    let report = sync_report(&traj, &unit, 1e-8)?;
    println!(
        "unit {{1,2}}: max spread {:e}, synchronized from t = {:?}",
        traj.max_spread(&unit),
        report.synchronized_from
    );

    let rest = h.vertex_set(&["3", "4", "5"])?;
    println!(
        "vertices {{3,4,5}}: final spread {:.3}",
        traj.spread(traj.len() - 1, &rest)
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
