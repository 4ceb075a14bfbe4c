//! Every example doubles as a smoke test of the capability it shows.

mod bounded_degree_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bounded_degree.rs"));
}

mod certify_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/certify.rs"));
}

mod exact_search_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exact_search.rs"));
}

mod export_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/export.rs"));
}

mod forest_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/forest.rs"));
}

mod hypergraph_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hypergraph.rs"));
}

mod local_degree_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/local_degree.rs"));
}

mod mobius_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mobius.rs"));
}

mod sequences_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sequences.rs"));
}

mod stars_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/stars.rs"));
}

#[test]
fn bounded_degree_example_runs() {
    bounded_degree_example::run_example().expect("bounded_degree example failed");
}

#[test]
fn certify_example_runs() {
    certify_example::run_example().expect("certify example failed");
}

#[test]
fn exact_search_example_runs() {
    exact_search_example::run_example().expect("exact_search example failed");
}

#[test]
fn export_example_runs() {
    export_example::run_example().expect("export example failed");
}

#[test]
fn forest_example_runs() {
    forest_example::run_example().expect("forest example failed");
}

#[test]
fn hypergraph_example_runs() {
    hypergraph_example::run_example().expect("hypergraph example failed");
}

#[test]
fn local_degree_example_runs() {
    local_degree_example::run_example().expect("local_degree example failed");
}

#[test]
fn mobius_example_runs() {
    mobius_example::run_example().expect("mobius example failed");
}

#[test]
fn sequences_example_runs() {
    sequences_example::run_example().expect("sequences example failed");
}

#[test]
fn stars_example_runs() {
    stars_example::run_example().expect("stars example failed");
}
