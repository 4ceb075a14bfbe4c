// Exact search and counting on random instances: maximum degree at most
// `t/2` always admits an independent transversal, and a block average
// degree of at most `t/4` gives at least `(t/2)^n` of them.

use indtrans::error::Result;
use indtrans::random::{random_bounded_degree_graph, random_low_block_degree_graph};
use indtrans::transversal::{check_ww_bound, find_transversal, is_independent_transversal, WwOutcome};
use rand::SeedableRng;

pub fn run_example() -> Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for t in [4u64, 6, 8] {
        let g = random_bounded_degree_graph(&mut rng, 6, t, (t / 2) as usize)?;
        let report = find_transversal(&g, true);
        let ok = report.found().is_some_and(|a| is_independent_transversal(&g, a));
        println!(
            "t = {t}: {} edges, max degree {}, transversal found: {ok}",
            g.num_edges(),
            g.max_degree()
        );
    }
    for _ in 0..3 {
        let g = random_low_block_degree_graph(&mut rng, 5, 4)?;
        match check_ww_bound(&g) {
            WwOutcome::BoundHolds { count, bound } => println!("{} edges: {count} >= {bound}", g.num_edges()),
            other => println!("{other:?}"),
        }
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
