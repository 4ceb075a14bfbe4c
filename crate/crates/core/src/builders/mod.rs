//! Builders for the extremal instances.
//!
//! The `*_construction` functions return the recursive template and check
//! the degree bounds the construction is meant to satisfy against its exact
//! profile; the `build_*` functions additionally materialize the instance
//! and re-check the bounds on it.

mod construction;

pub use construction::{BlockClass, BuildKind, Construction, ConstructionProfile, MATERIALIZE_LIMIT};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{InstanceBuilder, PartitionedInstance, Role};
use crate::rational::{c_r, ceil_u64, int, pow, ratio, to_f64};
use crate::sequences::{
    hypergraph_recurrence, hypergraph_sequence, lemma_min_t, lemma_recurrence, GradeSequence, HypergraphGradeSequence,
};

/// `1/2 + 1/(2 sqrt 2)` as the nearest double, converted exactly.
pub fn default_alpha() -> BigRational {
    BigRational::from_float(0.5 + 0.5 / std::f64::consts::SQRT_2).expect("finite")
}

/// Part size used for the local-degree variant.
pub fn local_degree_alpha() -> BigRational {
    ratio(731, 1000)
}

/// Parameters for any of the builders, as accepted by the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildRecipe {
    pub kind: BuildKind,
    pub t: u64,
    pub r: usize,
    pub epsilon: Option<String>,
    pub alpha: Option<String>,
    pub k_stars: Option<u64>,
    /// Full sequence for `forest`/`hypergraph`; heavy counts of grades
    /// `2..=k` for the gadget kinds.
    pub sequence_override: Option<Vec<u64>>,
}

fn seq_string(values: &[u64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BoundViolated(what()))
    }
}

fn require_positive(epsilon: &BigRational) -> Result<()> {
    if *epsilon <= BigRational::zero() {
        return Err(Error::parameter("epsilon must be positive"));
    }
    Ok(())
}

fn require_lemma_t(t: u64, epsilon: &BigRational) -> Result<()> {
    let min_t = lemma_min_t(epsilon);
    if t < min_t {
        return Err(Error::Parameter {
            message: format!("t = {t} is below the admissible minimum {min_t} for epsilon = {epsilon}"),
            min_t: Some(min_t),
        });
    }
    Ok(())
}

/// Graph bound `max block average <= (1/4 + eps) t`.
fn check_graph_average(p: &ConstructionProfile, epsilon: &BigRational) -> Result<()> {
    let bound = (ratio(1, 4) + epsilon) * int(p.t);
    check(p.max_block_avg_degree <= bound, || {
        format!("max block average degree {} exceeds {bound}", p.max_block_avg_degree)
    })
}

/// Hypergraph bound: every block meets at most `bound` stretched edges.
fn check_block_load(p: &ConstructionProfile, bound: &BigRational) -> Result<()> {
    check(int(p.max_block_degree) <= *bound, || {
        format!("a block meets {} stretched edges, bound {bound}", p.max_block_degree)
    })
}

pub fn forest_construction(t: u64, seq: &GradeSequence) -> Result<Construction> {
    if seq.t != t {
        return Err(Error::parameter(format!("sequence is for t = {}, not {t}", seq.t)));
    }
    let violations = seq.violations();
    if !violations.is_empty() {
        return Err(Error::InvalidSequence(violations));
    }
    let mut c = Construction::new(BuildKind::Forest, 2, t, vec![0], seq.values[1..].to_vec())?;
    c.set_meta("epsilon", &seq.epsilon);
    c.set_meta("sequence", seq_string(&seq.values));
    check_graph_average(&c.profile(), &seq.epsilon)?;
    Ok(c)
}

/// Forest with maximum block average degree at most `(1/4 + eps) t` and no
/// independent transversal.
pub fn build_forest(t: u64, seq: &GradeSequence) -> Result<PartitionedInstance> {
    let c = forest_construction(t, seq)?;
    let inst = c.materialize()?;
    verify_against_profile(&inst, &c.profile())?;
    Ok(inst)
}

/// Gadget part sizes `|A| = ceil(alpha t)`, `|B| = ceil(t / (4 alpha))`.
pub fn bipartite_gadget(t: u64, alpha: &BigRational) -> (u64, u64) {
    let a = ceil_u64(&(alpha * int(t)));
    let b = ceil_u64(&(int(t) / (int(4) * alpha)));
    (a, b)
}

fn require_alpha(alpha: &BigRational) -> Result<()> {
    if *alpha < ratio(1, 2) || *alpha >= BigRational::one() {
        return Err(Error::parameter(format!("alpha = {alpha} must lie in [1/2, 1)")));
    }
    Ok(())
}

pub fn bounded_degree_construction(t: u64, epsilon: &BigRational, alpha: &BigRational) -> Result<Construction> {
    require_positive(epsilon)?;
    require_alpha(alpha)?;
    require_lemma_t(t, epsilon)?;
    let (a, b) = bipartite_gadget(t, alpha);
    // t - n_1 is the forced-set size 2t - |A| - |B|
    let n1 = a + b - t;
    let values = lemma_recurrence(t, &(epsilon / int(2)), n1)?;
    let mut c = Construction::new(BuildKind::BoundedDegree, 2, t, vec![a, b], values[1..].to_vec())?;
    c.set_meta("epsilon", epsilon);
    c.set_meta("alpha", alpha);
    c.set_meta("sequence", seq_string(&values));
    let p = c.profile();
    check_graph_average(&p, epsilon)?;
    let a_f = to_f64(alpha);
    let target = a_f.max(2.0 - a_f - 1.0 / (4.0 * a_f));
    let limit = (target * t as f64).ceil() as u128 + 1;
    check(p.max_degree <= limit, || {
        format!("maximum degree {} exceeds {limit}", p.max_degree)
    })?;
    Ok(c)
}

pub fn build_bounded_degree_forest(t: u64, epsilon: &BigRational, alpha: &BigRational) -> Result<PartitionedInstance> {
    let c = bounded_degree_construction(t, epsilon, alpha)?;
    let inst = c.materialize()?;
    verify_against_profile(&inst, &c.profile())?;
    Ok(inst)
}

/// `ceil((2 - alpha - 1/(4 alpha))^{-1} t/4)`.
pub fn local_degree_n2(t: u64, alpha: &BigRational) -> u64 {
    let denom = int(2) - alpha - BigRational::one() / (int(4) * alpha);
    ceil_u64(&(ratio(t, 4) / denom))
}

pub fn local_degree_construction(t: u64, epsilon: &BigRational) -> Result<Construction> {
    local_degree_construction_with_alpha(t, epsilon, &local_degree_alpha())
}

pub fn local_degree_construction_with_alpha(
    t: u64,
    epsilon: &BigRational,
    alpha: &BigRational,
) -> Result<Construction> {
    require_positive(epsilon)?;
    require_alpha(alpha)?;
    require_lemma_t(t, epsilon)?;
    let alpha = alpha.clone();
    let (a, b) = bipartite_gadget(t, &alpha);
    let n2 = local_degree_n2(t, &alpha).min(t);
    let rest = lemma_recurrence(t, &(epsilon / int(2)), n2)?;
    let mut c = Construction::new(BuildKind::LocalDegree, 2, t, vec![a, b], rest)?;
    let mut values = vec![a + b - t];
    values.extend_from_slice(c.heavy_counts());
    c.set_meta("epsilon", epsilon);
    c.set_meta("alpha", &alpha);
    c.set_meta("sequence", seq_string(&values));
    let p = c.profile();
    check_graph_average(&p, epsilon)?;
    let limit = ceil_u64(&(&alpha * int(t)));
    check(t - n2 <= limit, || format!("t - n_2 = {} exceeds {limit}", t - n2))?;
    let local = p.local_degree.unwrap_or(0);
    check(local <= limit, || format!("local degree {local} exceeds {limit}"))?;
    Ok(c)
}

pub fn build_local_degree_forest(t: u64, epsilon: &BigRational) -> Result<PartitionedInstance> {
    build_local_degree_forest_with_alpha(t, epsilon, &local_degree_alpha())
}

pub fn build_local_degree_forest_with_alpha(
    t: u64,
    epsilon: &BigRational,
    alpha: &BigRational,
) -> Result<PartitionedInstance> {
    let c = local_degree_construction_with_alpha(t, epsilon, alpha)?;
    let inst = c.materialize()?;
    verify_against_profile(&inst, &c.profile())?;
    Ok(inst)
}

pub fn hypergraph_construction(
    t: u64,
    r: usize,
    epsilon: &BigRational,
    sequence_override: Option<&[u64]>,
) -> Result<Construction> {
    let seq = match sequence_override {
        Some(values) => {
            let seq = HypergraphGradeSequence::with_minimal_epsilon(t, r, values.to_vec());
            let v = seq.violations();
            if !v.is_empty() {
                return Err(Error::InvalidSequence(v));
            }
            seq
        }
        None => hypergraph_sequence(t, r, epsilon)?,
    };
    let mut c = Construction::new(BuildKind::Hypergraph, r, t, vec![0], seq.values[1..].to_vec())?;
    c.set_meta("epsilon", &seq.epsilon);
    c.set_meta("sequence", seq_string(&seq.values));
    c.set_meta("terminal", seq.terminal);
    let p = c.profile();
    let tr = pow(&int(t), r as u32);
    let bound = if sequence_override.is_some() {
        (BigRational::one() + &seq.epsilon) * c_r(r) * &tr
    } else {
        (c_r(r) + epsilon) * &tr
    };
    check_block_load(&p, &bound)?;
    let cap = num_bigint::BigUint::from((r as u64 - 1) * t).pow(p.grades as u32);
    check(p.num_blocks <= cap, || {
        format!("{} blocks exceed ((r-1)t)^k = {cap}", p.num_blocks)
    })?;
    Ok(c)
}

/// r-uniform hypergraph with at most `(c_r + eps) t^r` stretched edges at
/// every block and no independent transversal.
pub fn build_hypergraph(
    t: u64,
    r: usize,
    epsilon: &BigRational,
    sequence_override: Option<&[u64]>,
) -> Result<PartitionedInstance> {
    let c = hypergraph_construction(t, r, epsilon, sequence_override)?;
    let inst = c.materialize()?;
    verify_against_profile(&inst, &c.profile())?;
    Ok(inst)
}

/// Part sizes `t, ..., t, ceil((1 - c_r/3) t), ceil(c_r t^2 / m_{r-1})`.
pub fn multipartite_gadget(t: u64, r: usize) -> Vec<u64> {
    let cr = c_r(r);
    let second = ceil_u64(&((BigRational::one() - &cr / int(3)) * int(t))).min(t);
    let last = ceil_u64(&(&cr * int(t) * int(t) / int(second))).min(t);
    let mut parts = vec![t; r - 2];
    parts.push(second);
    parts.push(last);
    parts
}

/// `heavy_override` replaces the generated heavy counts of grades `2..=k`;
/// the epsilon-dependent preconditions and the load bound are then skipped.
pub fn hypergraph_bounded_degree_construction(
    t: u64,
    r: usize,
    epsilon: &BigRational,
    heavy_override: Option<&[u64]>,
) -> Result<Construction> {
    if r < 2 {
        return Err(Error::parameter("uniformity must be at least 2"));
    }
    let parts = multipartite_gadget(t, r);
    let forced: u64 = parts.iter().map(|m| t - m).sum();
    if forced > t {
        return Err(Error::parameter(format!("forced set {forced} exceeds t = {t}")));
    }
    let heavy = match heavy_override {
        Some(h) => h.to_vec(),
        None => {
            // validates epsilon and t
            hypergraph_sequence(t, r, epsilon)?;
            let delta = epsilon * ratio(5, 6);
            let (values, _) = hypergraph_recurrence(t, r, &delta, t - forced)?;
            values[1..].to_vec()
        }
    };
    let mut c = Construction::new(BuildKind::HypergraphBoundedDegree, r, t, parts.clone(), heavy)?;
    c.set_meta("epsilon", epsilon);
    c.set_meta("parts", seq_string(&parts));
    c.set_meta("sequence", seq_string(c.heavy_counts()));
    let p = c.profile();
    let tr = pow(&int(t), r as u32);
    let product: u128 = parts.iter().map(|&m| m as u128).product();
    if heavy_override.is_none() {
        let bound = (c_r(r) + epsilon) * &tr;
        check(int(product) <= bound, || {
            format!("gadget has {product} edges, bound {bound}")
        })?;
        check_block_load(&p, &bound)?;
    }
    let target = (BigRational::one() - c_r(r) / int(3)) * pow(&int(t), r as u32 - 1);
    let limit = ceil_u64(&target) as u128 + r as u128;
    check(p.max_degree <= limit, || {
        format!("maximum degree {} exceeds {limit}", p.max_degree)
    })?;
    Ok(c)
}

pub fn build_hypergraph_bounded_degree(
    t: u64,
    r: usize,
    epsilon: &BigRational,
    heavy_override: Option<&[u64]>,
) -> Result<PartitionedInstance> {
    let c = hypergraph_bounded_degree_construction(t, r, epsilon, heavy_override)?;
    let inst = c.materialize()?;
    verify_against_profile(&inst, &c.profile())?;
    Ok(inst)
}

/// `k^2` disjoint stars with `k` leaves; the centres form one block and the
/// leaves of each star another.
pub fn build_star_counterexample(k: u64) -> Result<PartitionedInstance> {
    if k == 0 {
        return Err(Error::parameter("k must be positive"));
    }
    let stars = k * k;
    let mut b = InstanceBuilder::new(2);
    let centre_block = b.add_block(None);
    let centres = b.add_vertices(centre_block, stars, Some(Role::Heavy));
    for &c in &centres {
        let blk = b.add_block(None);
        for leaf in b.add_vertices(blk, k, Some(Role::Light)) {
            b.add_edge(vec![c, leaf]);
        }
    }
    b.set_meta("builder", BuildKind::Stars.name());
    b.set_meta("k", k);
    let inst = b.finish()?;
    let degrees = inst.block_degrees();
    for blk in inst.blocks() {
        let size = blk.members.len() as u64;
        let d = degrees[blk.id.index()];
        check(d * k <= size * size, || {
            format!("{} meets {d} edges, more than |B|^2/k", blk.id)
        })?;
    }
    Ok(inst)
}

/// Appends isolated padding blocks of `t` light vertices until there are
/// `target` blocks.
pub fn pad_blocks(instance: &PartitionedInstance, target: usize) -> Result<PartitionedInstance> {
    let current = instance.num_blocks();
    if target < current {
        return Err(Error::parameter(format!(
            "cannot pad {current} blocks down to {target}"
        )));
    }
    let t = instance.nominal_t().unwrap_or(1);
    let mut b = InstanceBuilder::new(instance.uniformity());
    for info in instance.vertices() {
        b.push_raw_vertex(*info);
    }
    for blk in instance.blocks() {
        b.push_raw_block(blk.clone());
    }
    for e in instance.edges() {
        b.add_edge(e.to_vec());
    }
    for (k, v) in instance.meta() {
        b.set_meta(k.clone(), v);
    }
    for _ in current..target {
        let blk = b.add_block(None);
        b.add_vertices(blk, t, Some(Role::Light));
        b.mark_padding(blk);
    }
    if target > current {
        b.set_meta("padded_to", target);
    }
    b.finish()
}

/// Builds the instance a recipe describes.
pub fn build_from_recipe(recipe: &BuildRecipe) -> Result<PartitionedInstance> {
    let kind = recipe.kind;
    if recipe.alpha.is_some() && !matches!(kind, BuildKind::BoundedDegree | BuildKind::LocalDegree) {
        return Err(Error::parameter(format!(
            "alpha does not apply to kind {}",
            kind.name()
        )));
    }
    if recipe.k_stars.is_some() != (kind == BuildKind::Stars) {
        return Err(Error::parameter("k applies to, and is required by, kind stars only"));
    }
    if recipe.r != 2 && !matches!(kind, BuildKind::Hypergraph | BuildKind::HypergraphBoundedDegree) {
        return Err(Error::parameter(format!("kind {} builds graphs (r = 2)", kind.name())));
    }
    if recipe.sequence_override.is_some()
        && !matches!(
            kind,
            BuildKind::Forest | BuildKind::Hypergraph | BuildKind::HypergraphBoundedDegree
        )
    {
        return Err(Error::parameter(format!(
            "kind {} takes no sequence override",
            kind.name()
        )));
    }
    let alpha = |default: BigRational| -> Result<BigRational> {
        match &recipe.alpha {
            Some(a) => crate::rational::parse_rational(a),
            None => Ok(default),
        }
    };
    let eps = || -> Result<BigRational> {
        recipe
            .epsilon
            .as_deref()
            .map(crate::rational::parse_rational)
            .transpose()?
            .ok_or_else(|| Error::parameter("--epsilon is required for this kind"))
    };
    let ovr = recipe.sequence_override.as_deref();
    match recipe.kind {
        BuildKind::Forest => {
            let seq = match ovr {
                Some(values) => match &recipe.epsilon {
                    Some(_) => GradeSequence::explicit(recipe.t, values.to_vec(), eps()?),
                    None => GradeSequence::with_minimal_epsilon(recipe.t, values.to_vec()),
                },
                None => crate::sequences::lemma_n_sequence(recipe.t, &eps()?)?,
            };
            build_forest(recipe.t, &seq)
        }
        BuildKind::BoundedDegree => build_bounded_degree_forest(recipe.t, &eps()?, &alpha(default_alpha())?),
        BuildKind::LocalDegree => {
            build_local_degree_forest_with_alpha(recipe.t, &eps()?, &alpha(local_degree_alpha())?)
        }
        BuildKind::Hypergraph => {
            let e = if ovr.is_some() {
                eps().unwrap_or_else(|_| ratio(1, 100))
            } else {
                eps()?
            };
            build_hypergraph(recipe.t, recipe.r, &e, ovr)
        }
        BuildKind::HypergraphBoundedDegree => {
            let e = if ovr.is_some() {
                eps().unwrap_or_else(|_| ratio(1, 100))
            } else {
                eps()?
            };
            build_hypergraph_bounded_degree(recipe.t, recipe.r, &e, ovr)
        }
        BuildKind::Stars => build_star_counterexample(
            recipe
                .k_stars
                .ok_or_else(|| Error::parameter("--k is required for stars"))?,
        ),
    }
}

/// Recomputes the metrics of a materialized construction and compares them
/// with the template profile.
fn verify_against_profile(inst: &PartitionedInstance, p: &ConstructionProfile) -> Result<()> {
    let graph = inst.uniformity() == 2;
    check(p.num_blocks == inst.num_blocks().into(), || {
        "block count differs from profile".into()
    })?;
    check(p.num_edges == inst.num_edges().into(), || {
        "edge count differs from profile".into()
    })?;
    check(inst.count_stretched() == inst.num_edges(), || {
        "builder produced a non-stretched edge".into()
    })?;
    check(inst.thickness() == p.thickness, || "thickness differs from t".into())?;
    check(inst.max_degree() as u128 == p.max_degree, || {
        "maximum degree differs from profile".into()
    })?;
    check(inst.max_block_average_degree()? == p.max_block_avg_degree, || {
        "block average degree differs from profile".into()
    })?;
    if graph {
        check(Some(inst.is_forest()?) == p.is_forest, || {
            "forest flag differs from profile".into()
        })?;
        check(Some(inst.local_degree()?) == p.local_degree, || {
            "local degree differs from profile".into()
        })?;
    }
    Ok(())
}
