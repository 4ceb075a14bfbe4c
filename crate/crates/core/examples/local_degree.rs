// The bounded local degree forest at `t = 1000`, and a small one that is
// materialized and checked directly.

use indtrans::builders::{build_local_degree_forest, local_degree_construction};
use indtrans::error::Result;
use indtrans::rational::ratio;
use indtrans::transversal::{certify_construction, propagate_certificate};

pub fn run_example() -> Result<()> {
    let c = local_degree_construction(1000, &ratio(1, 20))?;
    let p = c.profile();
    println!("gadget parts {:?}; grades {}", c.gadget(), c.meta()["sequence"]);
    println!("local degree {:?}, t - n_2 = {}", p.local_degree, c.forced_size(2));
    println!("certificate valid: {}", certify_construction(&c)?.is_valid());

    let small = build_local_degree_forest(14, &ratio(1, 2))?;
    let m = small.metrics()?;
    println!(
        "t = 14: {} blocks, local degree {:?}, refuted: {}",
        m.num_blocks,
        m.local_degree,
        propagate_certificate(&small).is_some()
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
