//! Exact backtracking over blocks.
//!
//! Each node picks the unassigned block with the fewest candidates (ties to
//! the lowest id) and branches on its candidates. Choosing a vertex bumps a
//! counter on every incident edge; an edge with `r - 1` chosen endpoints
//! eliminates its last endpoint. A candidate is also eliminated when some
//! other open block has no candidate left that avoids completing an edge
//! with it. Eliminations are reference counted and undone from a trail.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::instance::{BlockId, PartitionedInstance, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// `assignment[b]` is the vertex picked in block `b`.
    Found {
        assignment: Vec<VertexId>,
    },
    NoneExhaustive,
    Count {
        count: u128,
    },
    /// The count or node cap was exceeded.
    Aborted {
        cap: u128,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalReport {
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
    /// Diagnostics only; never part of serialized reports.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl TransversalReport {
    pub fn found(&self) -> Option<&[VertexId]> {
        match &self.outcome {
            SearchOutcome::Found { assignment } => Some(assignment),
            _ => None,
        }
    }

    pub fn count(&self) -> Option<u128> {
        match self.outcome {
            SearchOutcome::Count { count } => Some(count),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Id-ascending vertex order; otherwise vertices are shuffled.
    pub deterministic: bool,
    /// Seed for the shuffle; a fresh one is drawn when absent.
    pub seed: Option<u64>,
    /// Stop with `Aborted` after this many nodes.
    pub node_limit: Option<u64>,
}

pub fn find_transversal(inst: &PartitionedInstance, deterministic: bool) -> TransversalReport {
    find_transversal_with(
        inst,
        &SearchOptions {
            deterministic,
            ..Default::default()
        },
    )
}

pub fn find_transversal_with(inst: &PartitionedInstance, options: &SearchOptions) -> TransversalReport {
    let start = Instant::now();
    let mut s = Solver::new(inst, options);
    let outcome = match s.find() {
        Ok(true) => SearchOutcome::Found {
            assignment: s.chosen.iter().map(|c| c.expect("complete")).collect(),
        },
        Ok(false) => SearchOutcome::NoneExhaustive,
        Err(()) => SearchOutcome::Aborted {
            cap: options.node_limit.unwrap_or(0) as u128,
        },
    };
    TransversalReport {
        outcome,
        nodes_explored: s.nodes,
        wall_time: start.elapsed(),
    }
}

/// Exact number of independent transversals, or `Aborted` once the count
/// passes `cap`.
pub fn count_transversals(inst: &PartitionedInstance, cap: Option<u128>) -> TransversalReport {
    let start = Instant::now();
    let mut s = Solver::new(
        inst,
        &SearchOptions {
            deterministic: true,
            ..Default::default()
        },
    );
    let mut count = 0u128;
    let outcome = match s.count(&mut count, cap) {
        Ok(()) => SearchOutcome::Count { count },
        Err(()) => SearchOutcome::Aborted {
            cap: cap.unwrap_or(u128::MAX),
        },
    };
    TransversalReport {
        outcome,
        nodes_explored: s.nodes,
        wall_time: start.elapsed(),
    }
}

struct Solver<'a> {
    inst: &'a PartitionedInstance,
    order: Vec<Vec<VertexId>>,
    chosen: Vec<Option<VertexId>>,
    is_chosen: Vec<bool>,
    eliminated: Vec<u32>,
    candidates: Vec<usize>,
    edge_hits: Vec<u32>,
    assigned: usize,
    nodes: u64,
    node_limit: Option<u64>,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a PartitionedInstance, options: &SearchOptions) -> Self {
        let mut order: Vec<Vec<VertexId>> = inst.blocks().iter().map(|b| b.members.clone()).collect();
        if !options.deterministic {
            let mut rng = match options.seed {
                Some(seed) => rand::rngs::StdRng::seed_from_u64(seed),
                None => rand::rngs::StdRng::from_entropy(),
            };
            for members in &mut order {
                members.shuffle(&mut rng);
            }
        }
        Solver {
            inst,
            candidates: order.iter().map(|m| m.len()).collect(),
            order,
            chosen: vec![None; inst.num_blocks()],
            is_chosen: vec![false; inst.num_vertices()],
            eliminated: vec![0; inst.num_vertices()],
            edge_hits: vec![0; inst.num_edges()],
            assigned: 0,
            nodes: 0,
            node_limit: options.node_limit,
        }
    }

    /// Unassigned block with the fewest candidates, lowest id first.
    fn pick(&self) -> Option<BlockId> {
        let mut best: Option<(usize, usize)> = None;
        for (b, &c) in self.candidates.iter().enumerate() {
            if self.chosen[b].is_none() && best.is_none_or(|(_, bc)| c < bc) {
                best = Some((b, c));
                if c == 0 {
                    break;
                }
            }
        }
        best.map(|(b, _)| BlockId(b as u32))
    }

    fn last_unchosen(&self, e: usize) -> Option<VertexId> {
        self.inst.edge(e).iter().copied().find(|u| !self.is_chosen[u.index()])
    }

    fn eliminate(&mut self, u: VertexId) {
        self.eliminated[u.index()] += 1;
        if self.eliminated[u.index()] == 1 {
            self.candidates[self.inst.block_of(u).index()] -= 1;
        }
    }

    fn restore(&mut self, u: VertexId) {
        self.eliminated[u.index()] -= 1;
        if self.eliminated[u.index()] == 0 {
            self.candidates[self.inst.block_of(u).index()] += 1;
        }
    }

    fn choose(&mut self, b: BlockId, v: VertexId) {
        let r = self.inst.uniformity() as u32;
        self.chosen[b.index()] = Some(v);
        self.is_chosen[v.index()] = true;
        self.assigned += 1;
        for &e in self.inst.incident_edges(v) {
            let e = e as usize;
            self.edge_hits[e] += 1;
            if self.edge_hits[e] == r - 1 {
                if let Some(u) = self.last_unchosen(e) {
                    self.eliminate(u);
                }
            }
        }
    }

    fn unchoose(&mut self, b: BlockId, v: VertexId) {
        let r = self.inst.uniformity() as u32;
        for &e in self.inst.incident_edges(v) {
            let e = e as usize;
            if self.edge_hits[e] == r - 1 {
                if let Some(u) = self.last_unchosen(e) {
                    self.restore(u);
                }
            }
            self.edge_hits[e] -= 1;
        }
        self.assigned -= 1;
        self.is_chosen[v.index()] = false;
        self.chosen[b.index()] = None;
    }

    /// Support pruning to a fixpoint: `v` is dropped when every candidate of
    /// some other open block would close an edge with `v` and the chosen
    /// vertices. Dropped vertices are pushed on `trail`.
    fn prune(&mut self, trail: &mut Vec<VertexId>) {
        let r = self.inst.uniformity() as u32;
        let mut support: Vec<(usize, VertexId)> = Vec::new();
        loop {
            let mut changed = false;
            for b in 0..self.order.len() {
                if self.chosen[b].is_some() {
                    continue;
                }
                for i in 0..self.order[b].len() {
                    let v = self.order[b][i];
                    if self.eliminated[v.index()] > 0 {
                        continue;
                    }
                    support.clear();
                    for &e in self.inst.incident_edges(v) {
                        let e = e as usize;
                        if self.edge_hits[e] != r - 2 {
                            continue;
                        }
                        let mut open = self
                            .inst
                            .edge(e)
                            .iter()
                            .filter(|u| !self.is_chosen[u.index()] && **u != v);
                        let (Some(&u), None) = (open.next(), open.next()) else {
                            continue;
                        };
                        let bu = self.inst.block_of(u).index();
                        if bu == b || self.chosen[bu].is_some() || self.eliminated[u.index()] > 0 {
                            continue;
                        }
                        support.push((bu, u));
                    }
                    support.sort_unstable();
                    support.dedup();
                    let mut killed = false;
                    for group in support.chunk_by(|x, y| x.0 == y.0) {
                        if group.len() >= self.candidates[group[0].0] {
                            killed = true;
                            break;
                        }
                    }
                    if killed {
                        self.eliminate(v);
                        trail.push(v);
                        changed = true;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn unprune(&mut self, trail: &[VertexId]) {
        for &v in trail.iter().rev() {
            self.restore(v);
        }
    }

    fn tick(&mut self) -> Result<(), ()> {
        self.nodes += 1;
        match self.node_limit {
            Some(limit) if self.nodes > limit => Err(()),
            _ => Ok(()),
        }
    }

    fn find(&mut self) -> Result<bool, ()> {
        let mut trail = Vec::new();
        self.prune(&mut trail);
        let res = self.find_pruned();
        if !matches!(res, Ok(true)) {
            self.unprune(&trail);
        }
        res
    }

    fn find_pruned(&mut self) -> Result<bool, ()> {
        let Some(b) = self.pick() else { return Ok(true) };
        if self.candidates[b.index()] == 0 {
            return Ok(false);
        }
        for i in 0..self.order[b.index()].len() {
            let v = self.order[b.index()][i];
            if self.eliminated[v.index()] > 0 {
                continue;
            }
            self.tick()?;
            self.choose(b, v);
            let done = self.find();
            if matches!(done, Ok(true)) {
                return done;
            }
            self.unchoose(b, v);
            done?;
        }
        Ok(false)
    }

    fn count(&mut self, total: &mut u128, cap: Option<u128>) -> Result<(), ()> {
        let mut trail = Vec::new();
        self.prune(&mut trail);
        let res = self.count_pruned(total, cap);
        self.unprune(&trail);
        res
    }

    fn count_pruned(&mut self, total: &mut u128, cap: Option<u128>) -> Result<(), ()> {
        let Some(b) = self.pick() else {
            *total += 1;
            return match cap {
                Some(c) if *total > c => Err(()),
                _ => Ok(()),
            };
        };
        if self.candidates[b.index()] == 0 {
            return Ok(());
        }
        for i in 0..self.order[b.index()].len() {
            let v = self.order[b.index()][i];
            if self.eliminated[v.index()] > 0 {
                continue;
            }
            self.tick()?;
            self.choose(b, v);
            let res = self.count(total, cap);
            self.unchoose(b, v);
            res?;
        }
        Ok(())
    }
}

/// Checks that `assignment` picks one vertex per block and contains no edge.
pub fn is_independent_transversal(inst: &PartitionedInstance, assignment: &[VertexId]) -> bool {
    if assignment.len() != inst.num_blocks() {
        return false;
    }
    let mut picked = vec![false; inst.num_vertices()];
    for (b, &v) in assignment.iter().enumerate() {
        if v.index() >= inst.num_vertices() || inst.block_of(v).index() != b {
            return false;
        }
        picked[v.index()] = true;
    }
    !inst.edges().any(|e| e.iter().all(|u| picked[u.index()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceBuilder;

    fn two_by_two(edges: &[(u32, u32)]) -> PartitionedInstance {
        let mut b = InstanceBuilder::new(2);
        for _ in 0..2 {
            let blk = b.add_block(None);
            b.add_vertices(blk, 2, None);
        }
        for &(x, y) in edges {
            b.add_edge(vec![VertexId(x), VertexId(y)]);
        }
        b.finish().unwrap()
    }

    #[test]
    fn single_edge_leaves_three() {
        let inst = two_by_two(&[(0, 2)]);
        assert_eq!(count_transversals(&inst, None).count(), Some(3));
        let rep = find_transversal(&inst, true);
        assert_eq!(rep.found(), Some(&[VertexId(0), VertexId(3)][..]));
    }

    #[test]
    fn complete_join_has_none() {
        let inst = two_by_two(&[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(count_transversals(&inst, None).count(), Some(0));
        assert_eq!(find_transversal(&inst, true).outcome, SearchOutcome::NoneExhaustive);
    }

    #[test]
    fn edgeless_product_rule_and_cap() {
        let mut b = InstanceBuilder::new(2);
        for _ in 0..4 {
            let blk = b.add_block(None);
            b.add_vertices(blk, 3, None);
        }
        let inst = b.finish().unwrap();
        assert_eq!(count_transversals(&inst, None).count(), Some(81));
        assert_eq!(
            count_transversals(&inst, Some(10)).outcome,
            SearchOutcome::Aborted { cap: 10 }
        );
    }

    #[test]
    fn hyperedge_needs_all_endpoints() {
        let mut b = InstanceBuilder::new(3);
        for _ in 0..3 {
            let blk = b.add_block(None);
            b.add_vertices(blk, 2, None);
        }
        b.add_edge(vec![VertexId(0), VertexId(2), VertexId(4)]);
        let inst = b.finish().unwrap();
        assert_eq!(count_transversals(&inst, None).count(), Some(7));
    }

    #[test]
    fn node_limit_aborts() {
        // needs a node per block
        let inst = two_by_two(&[(0, 2)]);
        let opts = SearchOptions {
            deterministic: true,
            node_limit: Some(1),
            ..Default::default()
        };
        assert!(matches!(
            find_transversal_with(&inst, &opts).outcome,
            SearchOutcome::Aborted { .. }
        ));
    }
}
