// Full-synchronization certificate assembled from the contraction and the
// unit eigenvalues, plus an ε sweep of the worst margin.

use hypersync::dynamics::{NodeDynamics, ScalarMap};
use hypersync::operator::{build_operator, fmt_num, spectrum};
use hypersync::samples;
use hypersync::stability::{contraction_stability_certificate, eps_sweep, sweep_csv, BoundCheck};

pub fn run_example() -> hypersync::Result<()> {
    let h = samples::h5();
    let dyn_ = NodeDynamics::new(ScalarMap::Identity, ScalarMap::Zero);
    let report = contraction_stability_certificate(&h, &dyn_, 0.1, 1.0, 1.0)?;
    for e in &report.eigenvalues {
        println!("{:>4} from {:?}", fmt_num(e.value), e.provenance);
    }
    println!("verdict {:?}", report.verdict);

    let lambdas = spectrum(&build_operator(&h))?.eigenvalues;
    let rows = eps_sweep(&lambdas, 0.02, 0.2, 10, |l, eps| {
        BoundCheck::discrete_signed(l, &dyn_, eps)
    })?;
    print!("{}", sweep_csv(&rows));

    match contraction_stability_certificate(&samples::h1(), &dyn_, 0.1, 1.0, 1.0) {
        Err(e) => println!("h1: {e}"),
        Ok(r) => println!("h1: {:?}", r.verdict),
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
