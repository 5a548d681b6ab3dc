// Spectrum of the diffusion operator and the analytic unit/twin eigenpairs.

use hypersync::operator::{analytic_eigenpairs, build_operator, spectrum};
use hypersync::samples;

pub fn run_example() -> hypersync::Result<()> {
    let h = samples::h5();
    let op = build_operator(&h);
    let spec = spectrum(&op)?;
    print!("{}", spec.to_csv());

    let report = analytic_eigenpairs(&h, &op, &spec)?;
    for e in &report.entries {
        println!(
            "{:?} {:?}: lambda = {} (in spectrum: {}, residual {:.1e})",
            e.provenance, e.cluster, e.eigenvalue, e.in_spectrum, e.max_residual
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
