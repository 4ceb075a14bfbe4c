// Canonical JSON and Graphviz output for the smallest star instance.

use indtrans::builders::build_star_counterexample;
use indtrans::error::Result;
use indtrans::io::{export_dot, instance_to_string, parse_instance};

pub fn run_example() -> Result<()> {
    let inst = build_star_counterexample(2)?;
    let json = instance_to_string(&inst);
    print!("{json}");
    assert_eq!(parse_instance(&json)?, inst);
    print!("{}", export_dot(&inst));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
