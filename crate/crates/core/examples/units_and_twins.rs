// Units, twin pairs, twin classes and the contraction of a small hypergraph.

use hypersync::samples;
use hypersync::units::{contract, find_twins, find_units, twin_classes};

pub fn run_example() -> hypersync::Result<()> {
    let h = samples::h5();
    let units = find_units(&h);
    for u in &units {
        println!(
            "unit {:?} generated by {:?}",
            h.labels(&u.members),
            h.edge_ids(&u.generating_set)
        );
    }
    for t in find_twins(&h, &units)? {
        println!(
            "twins {:?} ~ {:?} (sigma-preserving: {})",
            h.labels(&t.first.members),
            h.labels(&t.second.members),
            t.sigma_preserving
        );
    }
    println!("{} twin classes", twin_classes(&h)?.len());

    let k = contract(&h, 1.0, 1.0)?;
    println!(
        "contraction has {} vertices and {} edges",
        k.quotient.n_vertices(),
        k.quotient.n_edges()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
