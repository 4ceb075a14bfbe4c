// 3-uniform constructions: the small instance with grades `0, 1, 3`, and
// the stretched-edge profile of the generated sequence for epsilon = 7/100.

use indtrans::builders::{build_hypergraph, hypergraph_construction};
use indtrans::error::Result;
use indtrans::rational::{c_r, int, pow, ratio};
use indtrans::sequences::hypergraph_min_t;
use indtrans::transversal::propagate_certificate;

pub fn run_example() -> Result<()> {
    let h = build_hypergraph(3, 3, &ratio(1, 100), Some(&[0, 1, 3]))?;
    println!(
        "{} blocks, {} vertices, {} edges",
        h.num_blocks(),
        h.num_vertices(),
        h.num_edges()
    );
    println!("stretched-edge counts per block: {:?}", h.block_degrees());
    let cert = propagate_certificate(&h).expect("no independent transversal");
    println!("certificate empties {}", cert.conclusion);

    let eps = ratio(7, 100);
    let t = hypergraph_min_t(3, &eps);
    let c = hypergraph_construction(t, 3, &eps, None)?;
    let p = c.profile();
    let bound = (c_r(3) + &eps) * pow(&int(t), 3);
    println!("t = {t}: grades {}", c.meta()["sequence"]);
    println!("largest block load {} <= {}", p.max_block_degree, bound);
    println!("blocks in the full instance: {}", p.num_blocks);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
