// Builds the partitioned forest for `t = 6` with the grade sequence
// `0, 1, ..., 6`, prints its metrics and refutes it with a certificate.

use indtrans::builders::build_forest;
use indtrans::error::Result;
use indtrans::sequences::simple_sequence;
use indtrans::transversal::{check_certificate, propagate_certificate};

pub fn run_example() -> Result<()> {
    let seq = simple_sequence(6)?;
    println!("sequence {:?} with epsilon {}", seq.values, seq.epsilon);
    let forest = build_forest(6, &seq)?;
    let m = forest.metrics()?;
    println!(
        "{} blocks, {} vertices, {} edges; forest: {:?}",
        m.num_blocks, m.num_vertices, m.num_edges, m.is_forest
    );
    println!(
        "thickness {}, max block average degree {} (bound {})",
        m.thickness,
        m.max_block_avg_degree,
        (num_rational::BigRational::new(1.into(), 4.into()) + &seq.epsilon)
            * num_rational::BigRational::from_integer(6.into())
    );
    let cert = propagate_certificate(&forest).expect("the forest has no independent transversal");
    println!(
        "certificate: {} forced sets, {} forbidden vertices, {} emptied",
        cert.forced_steps(),
        cert.forbidden_steps(),
        cert.conclusion
    );
    assert!(check_certificate(&forest, &cert)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
