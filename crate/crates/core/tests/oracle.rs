//! Worked examples checked against oracles that do not go through the code
//! under test: brute-force enumeration, hand counts, direct recurrences and
//! float evaluations of the closed forms.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use common::{instance, naive_count, propagation_gap_instance};
use indtrans::builders::{
    bipartite_gadget, bounded_degree_construction, build_forest, build_hypergraph, build_star_counterexample,
    default_alpha, local_degree_alpha, local_degree_n2, pad_blocks,
};
use indtrans::instance::{BlockId, PartitionedInstance, Role, VertexId};
use indtrans::io::export_dot;
use indtrans::mobius::{mobius_orbit, OrbitOutcome};
use indtrans::sequences::{
    haxell_threshold, lemma_n_sequence, minimal_epsilon, simple_sequence, validate_sequence, GradeSequence,
};
use indtrans::transversal::{check_ww_bound, count_transversals, propagate_certificate, WwOutcome};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn seq(t: u64, values: &[u64]) -> GradeSequence {
    GradeSequence::with_minimal_epsilon(t, values.to_vec())
}

/// Edges meeting each block, counted straight from the edge list.
fn hand_block_degrees(inst: &PartitionedInstance) -> Vec<u64> {
    let mut deg = vec![0u64; inst.num_blocks()];
    for e in inst.edges() {
        let touched: BTreeSet<usize> = e.iter().map(|&v| inst.block_of(v).index()).collect();
        for b in touched {
            deg[b] += 1;
        }
    }
    deg
}

fn grade_of_block(inst: &PartitionedInstance, b: BlockId) -> Option<u32> {
    inst.blocks()[b.index()].grade
}

fn count_lines(text: &str, needle: &str) -> usize {
    text.lines().filter(|l| l.contains(needle)).count()
}

#[test]
fn forest_t3_two_grades_by_hand() {
    let inst = build_forest(3, &seq(3, &[0, 3])).unwrap();
    assert_eq!((inst.num_blocks(), inst.num_vertices(), inst.num_edges()), (4, 12, 9));
    let top = inst.blocks().iter().find(|b| b.grade == Some(2)).unwrap();
    assert!(top
        .members
        .iter()
        .all(|&v| inst.vertices()[v.index()].role == Some(Role::Heavy)));

    let deg = hand_block_degrees(&inst);
    assert_eq!(deg[top.id.index()], 9);
    assert_eq!(inst.block_degree(top.id).unwrap(), 9);
    assert_eq!(inst.max_block_average_degree().unwrap(), q(3, 1));
    assert_eq!(inst.max_degree(), 3);
    assert!(inst.is_forest().unwrap());
    assert_eq!(inst.thickness(), 3);

    // 3^4 = 81 transversals, none independent
    assert_eq!(naive_count(&inst), 0);
    assert_eq!(count_transversals(&inst, None).count(), Some(0));

    let cert = propagate_certificate(&inst).unwrap();
    assert_eq!(cert.forced_steps(), 3);
    assert_eq!(cert.forbidden_steps(), 3);
    assert_eq!(cert.conclusion, top.id);

    let dot = export_dot(&inst);
    assert_eq!(count_lines(&dot, "subgraph cluster_"), 4);
    assert_eq!(count_lines(&dot, " -- "), 9);
}

#[test]
fn forest_t2_three_grades_by_hand() {
    let inst = build_forest(2, &seq(2, &[0, 1, 2])).unwrap();
    // N_1 = 1, N_2 = 1 + 1*1, N_3 = 1 + 2*2
    assert_eq!((inst.num_blocks(), inst.num_vertices(), inst.num_edges()), (5, 10, 6));
    assert_eq!(naive_count(&inst), 0);
    let cert = propagate_certificate(&inst).unwrap();
    assert_eq!(grade_of_block(&inst, cert.conclusion), Some(3));
}

#[test]
fn block_count_recurrence() {
    fn recurrence(values: &[u64]) -> Vec<u64> {
        let mut n = vec![1u64];
        for &v in &values[1..] {
            n.push(1 + v * n.last().unwrap());
        }
        n
    }
    assert_eq!(recurrence(&[0, 1, 2, 3, 4, 5, 6]), vec![1, 2, 5, 16, 65, 326, 1957]);
    for (t, values) in [
        (6u64, vec![0u64, 1, 2, 3, 4, 5, 6]),
        (3, vec![0, 3]),
        (4, vec![0, 2, 4]),
        (5, vec![0, 2, 3, 5]),
    ] {
        let inst = build_forest(t, &seq(t, &values)).unwrap();
        assert_eq!(
            inst.num_blocks() as u64,
            *recurrence(&values).last().unwrap(),
            "{values:?}"
        );
        assert_eq!(inst.thickness(), t);
        assert!(inst.is_forest().unwrap());
    }
}

/// `(n_j (t - n_{j-1}) + t - n_j) / t`, the average degree of a grade-j block.
fn grade_average(t: u64, values: &[u64], j: usize) -> BigRational {
    let (prev, cur) = (values[j - 1] as i64, values[j] as i64);
    q(cur * (t as i64 - prev) + t as i64 - cur, t as i64)
}

#[test]
fn grade_sequence_t20() {
    let s = lemma_n_sequence(20, &q(3, 10)).unwrap();
    assert_eq!(s.values, vec![0, 8, 13, 20]);
    assert_eq!(grade_average(20, &s.values, 2), q(163, 20));
    let bound = (q(1, 4) + q(3, 10)) * q(20, 1);
    for j in 1..s.values.len() {
        assert!(grade_average(20, &s.values, j) <= bound);
    }
    assert!(validate_sequence(&s).is_empty());
}

#[test]
fn simple_sequence_minimal_epsilon() {
    let s = simple_sequence(6).unwrap();
    assert_eq!(s.values, (0..=6).collect::<Vec<_>>());
    let worst = (1..=6).map(|j| grade_average(6, &s.values, j)).max().unwrap();
    assert_eq!(worst, q(5, 2));
    assert_eq!(minimal_epsilon(6, &s.values), worst / q(6, 1) - q(1, 4));
    assert_eq!(minimal_epsilon(6, &s.values), q(1, 6));

    assert_eq!(simple_sequence(2).unwrap().values, vec![0, 1, 2]);
    let hundred = simple_sequence(100).unwrap().with_epsilon(q(1, 10));
    assert!(validate_sequence(&hundred).is_empty());
    let bad = GradeSequence::explicit(4, vec![0, 4], BigRational::zero());
    assert_eq!(validate_sequence(&bad).len(), 1);
}

#[test]
fn haxell_thresholds() {
    assert_eq!(haxell_threshold(5, 4).unwrap(), 3);
    assert_eq!(haxell_threshold(2, 10).unwrap(), 10);
    assert_eq!(haxell_threshold(1000, 10).unwrap(), 6);
    for n in 2..40u64 {
        for t in 1..30u64 {
            let expected = ((n * t) as f64 / (2 * (n - 1)) as f64).ceil() as u64;
            assert_eq!(haxell_threshold(n, t).unwrap(), expected, "n={n} t={t}");
        }
    }
    assert!(haxell_threshold(1, 4).is_err());
}

#[test]
fn mobius_quarter_closed_form() {
    let orbit = mobius_orbit(&q(1, 4), &BigRational::zero(), 50).unwrap();
    for (n, z) in orbit.points.iter().enumerate().take(51) {
        assert_eq!(*z, q(n as i64, 2 * n as i64 + 2), "step {n}");
    }
    assert!(!matches!(orbit.outcome, OrbitOutcome::Escaped { .. }));
}

/// First step at which `z -> alpha / (1 - z)` reaches 1, by direct iteration.
fn escape_step(alpha: &BigRational, limit: usize) -> Option<usize> {
    let mut z = BigRational::zero();
    for step in 0..=limit {
        if z >= BigRational::one() {
            return Some(step);
        }
        z = alpha / (BigRational::one() - z);
    }
    None
}

#[test]
fn mobius_escapes() {
    let half = mobius_orbit(&q(1, 2), &BigRational::zero(), 100).unwrap();
    assert_eq!(half.points[..3], [q(0, 1), q(1, 2), q(1, 1)]);
    assert_eq!(half.outcome, OrbitOutcome::Escaped { step: 2 });
    for (n, d, step) in [(13, 50, 14), (251, 1000, 48)] {
        let alpha = q(n, d);
        assert_eq!(escape_step(&alpha, 10_000), Some(step));
        let orbit = mobius_orbit(&alpha, &BigRational::zero(), 10_000).unwrap();
        assert_eq!(orbit.outcome, OrbitOutcome::Escaped { step });
    }
}

#[test]
fn bounded_degree_gadget_numbers() {
    let alpha = 0.5 + 0.5 / 2f64.sqrt();
    let t = 1000.0;
    let (a, b) = ((alpha * t).ceil() as u64, (t / (4.0 * alpha)).ceil() as u64);
    assert_eq!((a, b), (854, 293));
    assert_eq!(bipartite_gadget(1000, &default_alpha()), (a, b));
    let forced = 2000 - a - b;
    assert_eq!(forced, 853);
    let c = bounded_degree_construction(1000, &q(1, 20), &default_alpha()).unwrap();
    let p = c.profile();
    assert_eq!(p.max_degree, a.max(b).max(forced) as u128);
    assert_eq!(p.is_forest, Some(false));

    // alpha = 1/2 gives |A| = |B| = t/2
    assert_eq!(bipartite_gadget(1000, &q(1, 2)), (500, 500));
}

#[test]
fn local_degree_numbers() {
    let (a, b) = bipartite_gadget(1000, &local_degree_alpha());
    assert_eq!((a, b), (731, 342));
    assert_eq!(1000 - b, 658);
    assert_eq!(
        local_degree_n2(1000, &local_degree_alpha()),
        (250.0f64 / 0.927).ceil() as u64
    );
    assert_eq!(local_degree_n2(1000, &local_degree_alpha()), 270);
}

#[test]
fn hypergraph_r3_t3_by_hand() {
    let inst = build_hypergraph(3, 3, &q(1, 2), Some(&[0, 1, 3])).unwrap();
    // 1 + 3 * 6 blocks; 6 gadgets of 9 edges and 3 terminal vertices of 4
    assert_eq!(
        (inst.num_blocks(), inst.num_vertices(), inst.num_edges()),
        (19, 57, 6 * 9 + 3 * 4)
    );
    assert_eq!(inst.uniformity(), 3);
    for e in inst.edges() {
        assert!(inst.is_stretched(e).unwrap());
        let blocks: BTreeSet<_> = e.iter().map(|&v| inst.block_of(v)).collect();
        assert_eq!(blocks.len(), 3);
    }
    assert_eq!(hand_block_degrees(&inst), inst.block_degrees());
    let cert = propagate_certificate(&inst).unwrap();
    assert_eq!(grade_of_block(&inst, cert.conclusion), Some(3));
    assert_eq!(count_transversals(&inst, None).count(), Some(0));
}

#[test]
fn hypergraph_r2_matches_forest() {
    let a = build_hypergraph(3, 2, &q(1, 2), Some(&[0, 3])).unwrap();
    let b = build_forest(3, &seq(3, &[0, 3])).unwrap();
    let edges = |i: &PartitionedInstance| i.edges().map(|e| e.to_vec()).collect::<BTreeSet<_>>();
    assert_eq!(edges(&a), edges(&b));
    assert_eq!(a.blocks(), b.blocks());
}

#[test]
fn star_counterexample_counts() {
    let k4 = build_star_counterexample(4).unwrap();
    assert_eq!(k4.num_blocks(), 17);
    let deg = hand_block_degrees(&k4);
    for blk in k4.blocks() {
        let size = blk.members.len() as u64;
        assert_eq!(deg[blk.id.index()] * 4, size * size, "block {}", blk.id);
    }
    assert_eq!(deg.iter().max(), Some(&64));
    assert_eq!(k4.thickness(), 4);

    let k2 = build_star_counterexample(2).unwrap();
    assert_eq!((k2.num_blocks(), k2.num_vertices(), k2.num_edges()), (5, 12, 8));
    assert_eq!(naive_count(&k2), 0);
    let dot = export_dot(&k2);
    assert_eq!(count_lines(&dot, "subgraph cluster_"), 5);
    assert_eq!(count_lines(&dot, " -- "), 8);

    let k1 = build_star_counterexample(1).unwrap();
    assert_eq!((k1.num_blocks(), k1.num_edges()), (2, 1));
    assert_eq!(naive_count(&k1), 0);
}

#[test]
fn small_hand_instances() {
    let one_edge = instance(2, &[2, 2], &[&[0, 2]]);
    assert_eq!(naive_count(&one_edge), 3);
    assert_eq!(count_transversals(&one_edge, None).count(), Some(3));
    assert_eq!(one_edge.max_block_average_degree().unwrap(), q(1, 2));

    let edgeless = instance(2, &[3, 3, 3, 3], &[]);
    assert_eq!(naive_count(&edgeless), 81);
    assert_eq!(count_transversals(&edgeless, None).count(), Some(81));
    assert_eq!(edgeless.max_block_average_degree().unwrap(), BigRational::zero());
    assert_eq!(edgeless.local_degree().unwrap(), 0);

    let triangle = instance(2, &[1, 1, 1], &[&[0, 1], &[1, 2], &[0, 2]]);
    assert!(!triangle.is_forest().unwrap());

    let k23 = instance(2, &[2, 3], &[&[0, 2], &[0, 3], &[0, 4], &[1, 2], &[1, 3], &[1, 4]]);
    assert_eq!(k23.local_degree().unwrap(), 3);
    assert!(!k23.is_forest().unwrap());

    let mixed = instance(3, &[2, 2, 2], &[&[0, 2, 4], &[0, 1, 2]]);
    assert!(mixed.is_stretched(&[VertexId(0), VertexId(2), VertexId(4)]).unwrap());
    assert!(!mixed.is_stretched(&[VertexId(0), VertexId(1), VertexId(2)]).unwrap());
    assert_eq!(instance(2, &[5], &[]).thickness(), 5);
}

#[test]
fn ww_hypothesis_fails_on_forest() {
    let inst = build_forest(3, &seq(3, &[0, 3])).unwrap();
    assert_eq!(check_ww_bound(&inst), WwOutcome::HypothesisNotMet);
    let edgeless = instance(2, &[2, 2, 2], &[]);
    assert!(matches!(
        check_ww_bound(&edgeless),
        WwOutcome::BoundHolds { count: 8, .. }
    ));
}

#[test]
fn propagation_gap_is_real() {
    let inst = propagation_gap_instance();
    assert_eq!(naive_count(&inst), 0);
    assert!(propagate_certificate(&inst).is_none());
}

#[test]
fn padding_keeps_the_certificate() {
    let inst = build_forest(3, &seq(3, &[0, 3])).unwrap();
    let padded = pad_blocks(&inst, 10).unwrap();
    assert_eq!(padded.num_blocks(), 10);
    assert_eq!(padded.num_edges(), 9);
    assert_eq!(padded.thickness(), 3);
    let cert = propagate_certificate(&padded).unwrap();
    assert_eq!(grade_of_block(&padded, cert.conclusion), Some(2));
    let same = pad_blocks(&inst, 4).unwrap();
    assert_eq!(same.blocks(), inst.blocks());
}
