// Grade sequences: the recurrence for graphs and for 3-uniform
// hypergraphs, and validation of hand-written sequences.

use indtrans::error::Result;
use indtrans::rational::{parse_rational, ratio};
use indtrans::sequences::{
    hypergraph_min_t, hypergraph_sequence, lemma_min_t, lemma_n_sequence, validate_sequence, GradeSequence,
};

pub fn run_example() -> Result<()> {
    let eps = parse_rational("3/10")?;
    let seq = lemma_n_sequence(20, &eps)?;
    println!("t = 20, epsilon = 3/10: {:?}", seq.values);
    for j in 1..seq.len() {
        println!("  grade {j} block average degree {}", seq.block_average(j));
    }
    println!(
        "smallest admissible t for epsilon = 1/20: {}",
        lemma_min_t(&ratio(1, 20))
    );
    println!("t = 1000: {:?}", lemma_n_sequence(1000, &ratio(1, 20))?.values);

    let bad = GradeSequence::with_minimal_epsilon(10, vec![0, 2, 10]).with_epsilon(ratio(1, 10));
    for v in validate_sequence(&bad) {
        println!("  rejected: {v}");
    }

    let eps3 = ratio(7, 100);
    let t = hypergraph_min_t(3, &eps3);
    let h = hypergraph_sequence(t, 3, &eps3)?;
    println!(
        "r = 3, epsilon = 7/100, t = {t}: {:?} (terminal {})",
        h.values, h.terminal
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
