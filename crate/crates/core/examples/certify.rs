// Certificates as files: produce one, replay it, and watch the replay fail
// once an edge it relies on is removed.

use indtrans::builders::build_forest;
use indtrans::error::Result;
use indtrans::instance::InstanceBuilder;
use indtrans::io::{certificate_to_string, parse_certificate};
use indtrans::sequences::GradeSequence;
use indtrans::transversal::{check_certificate, propagate_certificate};

pub fn run_example() -> Result<()> {
    let inst = build_forest(3, &GradeSequence::with_minimal_epsilon(3, vec![0, 3]))?;
    let cert = propagate_certificate(&inst).expect("refutable");
    let text = certificate_to_string(&cert);
    print!("{text}");
    let back = parse_certificate(&text)?;
    println!("replay: {}", check_certificate(&inst, &back)?);

    // same instance minus its first edge
    let mut b = InstanceBuilder::new(2);
    for blk in inst.blocks() {
        let id = b.add_block(blk.grade);
        for &v in &blk.members {
            b.add_vertex(id, inst.vertices()[v.index()].role);
        }
    }
    for e in inst.edges().skip(1) {
        b.add_edge(e.to_vec());
    }
    let damaged = b.finish()?;
    println!("replay without edge 0: {}", check_certificate(&damaged, &back)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
