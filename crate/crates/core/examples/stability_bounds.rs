// Stability bounds for a unit under linear node dynamics, compared with the
// measured decay of a small perturbation.

use hypersync::dynamics::NodeDynamics;
use hypersync::operator::fmt_num;
use hypersync::samples;
use hypersync::stability::{
    cluster_stability, perturb_and_measure, Model, PerturbationConfig, StabilityReport,
};

pub fn run_example() -> hypersync::Result<()> {
    let h = samples::h1();
    let unit = h.vertex_set(&["1", "2"])?;
    let dyn_ = NodeDynamics::linear(1.0, 0.2);
    let eps = 0.1;

    let bounds = cluster_stability(&h, &unit, &dyn_, eps, Model::Discrete)?;
    for c in &bounds.checks {
        println!("lambda {}: {} < {} -> {}", c.lambda, c.lhs, c.rhs, c.pass);
    }

    let config = PerturbationConfig::new(eps, 40, 1);
    let (_, measured) = perturb_and_measure(&h, &unit, &dyn_, &config, None)?;
    for r in &measured.rates {
        println!(
            "direction {} (lambda {}): ratio {:.6}",
            r.direction,
            fmt_num(r.lambda),
            r.ratio
        );
    }
    let report = StabilityReport::from_bounds(bounds, Some(measured));
    println!("verdict {:?}", report.verdict);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
