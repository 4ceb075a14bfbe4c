// The bounded maximum degree forest at `t = 1000`. The full instance has
// about 10^22 blocks, so its metrics come from the exact profile of the
// construction and the certificate from its skeleton.

use indtrans::builders::{bounded_degree_construction, default_alpha};
use indtrans::error::Result;
use indtrans::rational::ratio;
use indtrans::transversal::certify_construction;

pub fn run_example() -> Result<()> {
    let c = bounded_degree_construction(1000, &ratio(1, 20), &default_alpha())?;
    let p = c.profile();
    println!("gadget parts {:?}, forced set {}", c.gadget(), c.forced_size(1));
    println!("grades: {}", c.meta()["sequence"]);
    println!("blocks {}, edges {}", p.num_blocks, p.num_edges);
    println!(
        "max degree {}, max block average degree {}",
        p.max_degree, p.max_block_avg_degree
    );
    let cert = certify_construction(&c)?;
    println!(
        "skeleton {} vertices / {} edges; certificate valid: {}",
        cert.skeleton_vertices,
        cert.skeleton_edges,
        cert.is_valid()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
