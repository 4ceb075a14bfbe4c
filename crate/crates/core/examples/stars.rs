// Disjoint stars with the centres in one block: every block `B` meets
// exactly `|B|^2 / k` edges, yet there is no independent transversal.

use indtrans::builders::build_star_counterexample;
use indtrans::error::Result;
use indtrans::transversal::{find_transversal, propagate_certificate};

pub fn run_example() -> Result<()> {
    for k in 1..=5 {
        let inst = build_star_counterexample(k)?;
        let degrees = inst.block_degrees();
        let report = find_transversal(&inst, true);
        println!(
            "k = {k}: {} blocks, centre block meets {} edges, leaf blocks {}; search: {:?} after {} nodes; certificate: {}",
            inst.num_blocks(),
            degrees[0],
            degrees.get(1).copied().unwrap_or(0),
            report.outcome,
            report.nodes_explored,
            propagate_certificate(&inst).is_some()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
