//! Invariants over randomly generated instances, sequences and orbits.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::naive_count;
use indtrans::builders::build_forest;
use indtrans::instance::{InstanceBuilder, PartitionedInstance, VertexId};
use indtrans::io::{instance_to_string, parse_instance};
use indtrans::mobius::{mobius_orbit, OrbitOutcome};
use indtrans::rational::c_r;
use indtrans::sequences::{
    hypergraph_min_t, hypergraph_sequence, lemma_min_t, lemma_n_sequence, minimal_epsilon, validate_sequence,
    GradeSequence,
};
use indtrans::transversal::{
    check_certificate, count_transversals, find_transversal, find_transversal_with, propagate_certificate,
    SearchOptions, SearchOutcome,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn build(r: usize, sizes: &[u64], picks: &[Vec<usize>]) -> PartitionedInstance {
    let total: usize = sizes.iter().sum::<u64>() as usize;
    let mut b = InstanceBuilder::new(r);
    for &s in sizes {
        let blk = b.add_block(None);
        b.add_vertices(blk, s, None);
    }
    let mut seen = BTreeSet::new();
    for p in picks {
        let e: BTreeSet<usize> = p.iter().map(|&x| x % total).collect();
        if e.len() == r && seen.insert(e.clone()) {
            b.add_edge(e.into_iter().map(|v| VertexId(v as u32)).collect());
        }
    }
    b.finish().unwrap()
}

/// Up to five blocks of one to three vertices, graphs or 3-graphs.
fn small_instance() -> impl Strategy<Value = PartitionedInstance> {
    (2usize..=3, prop::collection::vec(1u64..=3, 1..=5)).prop_flat_map(|(r, sizes)| {
        let edges = prop::collection::vec(prop::collection::vec(0usize..64, r), 0..14);
        (Just(r), Just(sizes), edges).prop_map(|(r, sizes, picks)| build(r, &sizes, &picks))
    })
}

fn instance_with_perm() -> impl Strategy<Value = (PartitionedInstance, Vec<VertexId>)> {
    small_instance().prop_flat_map(|inst| {
        let ids: Vec<VertexId> = (0..inst.num_vertices() as u32).map(VertexId).collect();
        (Just(inst), Just(ids).prop_shuffle())
    })
}

/// A transversal with no edge inside, checked without the library.
fn independent(inst: &PartitionedInstance, pick: &[VertexId]) -> bool {
    let blocks: BTreeSet<_> = pick.iter().map(|&v| inst.block_of(v)).collect();
    let chosen: BTreeSet<_> = pick.iter().copied().collect();
    pick.len() == inst.num_blocks()
        && blocks.len() == inst.num_blocks()
        && !inst.edges().any(|e| e.iter().all(|v| chosen.contains(v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn count_matches_enumeration(inst in small_instance()) {
        let report = count_transversals(&inst, None);
        prop_assert_eq!(report.count(), Some(naive_count(&inst) as u128));
    }

    #[test]
    fn search_agrees_with_count(inst in small_instance(), seed in any::<u64>()) {
        let count = naive_count(&inst);
        let opts = SearchOptions { deterministic: false, seed: Some(seed), node_limit: None };
        let report = find_transversal_with(&inst, &opts);
        match report.found() {
            Some(pick) => {
                prop_assert!(count > 0);
                prop_assert!(independent(&inst, pick));
            }
            None => {
                prop_assert_eq!(count, 0);
                prop_assert_eq!(report.outcome, SearchOutcome::NoneExhaustive);
            }
        }
    }

    #[test]
    fn certificates_are_sound(inst in small_instance()) {
        if let Some(cert) = propagate_certificate(&inst) {
            prop_assert!(check_certificate(&inst, &cert).unwrap());
            prop_assert_eq!(naive_count(&inst), 0);
        }
    }

    #[test]
    fn deterministic_search_repeats(inst in small_instance()) {
        let a = find_transversal(&inst, true);
        let b = find_transversal(&inst, true);
        prop_assert_eq!(a.outcome, b.outcome);
        prop_assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn relabeling_preserves_everything((inst, perm) in instance_with_perm()) {
        let other = inst.relabeled(&perm).unwrap();
        let sorted = |i: &PartitionedInstance| {
            let mut d = i.block_degrees();
            d.sort_unstable();
            d
        };
        prop_assert_eq!(sorted(&inst), sorted(&other));
        prop_assert_eq!(inst.max_block_average_degree().unwrap(), other.max_block_average_degree().unwrap());
        prop_assert_eq!(inst.max_degree(), other.max_degree());
        prop_assert_eq!(inst.thickness(), other.thickness());
        prop_assert_eq!(inst.count_stretched(), other.count_stretched());
        if inst.uniformity() == 2 {
            prop_assert_eq!(inst.local_degree().unwrap(), other.local_degree().unwrap());
            prop_assert_eq!(inst.is_forest().unwrap(), other.is_forest().unwrap());
        }
        prop_assert_eq!(naive_count(&inst), naive_count(&other));
        prop_assert_eq!(propagate_certificate(&inst).is_some(), propagate_certificate(&other).is_some());
    }

    #[test]
    fn serialization_round_trips(inst in small_instance()) {
        let text = instance_to_string(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(instance_to_string(&back), text);
    }

    #[test]
    fn grade_sequences_are_admissible(p in 5i64..=50, extra in 0u64..300) {
        let eps = q(p, 100);
        let t = lemma_min_t(&eps) + extra;
        let s = lemma_n_sequence(t, &eps).unwrap();
        prop_assert_eq!(s.values.first(), Some(&0));
        prop_assert_eq!(s.values.last(), Some(&t));
        prop_assert!(s.values.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(validate_sequence(&s).is_empty());
        prop_assert!(minimal_epsilon(t, &s.values) <= eps);
    }

    #[test]
    fn hypergraph_sequences_are_admissible(r in 2usize..=4, p in 30i64..=99, extra in 0u64..100) {
        // a fraction of the admissible range (0, c_r / 2)
        let eps = c_r(r) * q(p, 200);
        let t = hypergraph_min_t(r, &eps) + extra;
        let s = hypergraph_sequence(t, r, &eps).unwrap();
        prop_assert_eq!(s.values.first(), Some(&0));
        prop_assert_eq!(s.values.last(), Some(&t));
        prop_assert!(s.values.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(validate_sequence(&s).is_empty());
        let growth = BigRational::one() + &s.delta / BigInt::from(2);
        for w in s.values.windows(2).skip(1) {
            if w[1] < t {
                prop_assert!(q(w[1] as i64, 1) >= &growth * BigInt::from(w[0]));
            }
        }
    }

    #[test]
    fn small_forests_have_no_transversal(t in 2u64..=4, mask in 0u32..8) {
        let mut values = vec![0];
        values.extend((1..t).filter(|i| mask & (1 << (i - 1)) != 0));
        values.push(t);
        let inst = build_forest(t, &GradeSequence::with_minimal_epsilon(t, values)).unwrap();
        prop_assert!(inst.is_forest().unwrap());
        prop_assert_eq!(inst.thickness(), t);
        prop_assert_eq!(inst.count_stretched(), inst.num_edges());
        let cert = propagate_certificate(&inst);
        prop_assert!(cert.is_some());
        prop_assert!(check_certificate(&inst, &cert.unwrap()).unwrap());
        prop_assert_eq!(find_transversal(&inst, true).outcome, SearchOutcome::NoneExhaustive);
    }

    #[test]
    fn orbit_escapes_iff_alpha_above_quarter(p in 1i64..=1000) {
        let alpha = q(p, 1000);
        let orbit = mobius_orbit(&alpha, &BigRational::zero(), 10_000).unwrap();
        let escaped = matches!(orbit.outcome, OrbitOutcome::Escaped { .. });
        prop_assert_eq!(escaped, p > 250);
        if p <= 250 {
            prop_assert!(orbit.points.iter().all(|z| *z < q(1, 2) || *z == q(1, 2)));
        }
    }
}
