//! Forbidden/forced propagation.
//!
//! A vertex set `S` is *forced* when every independent transversal meets it,
//! and a vertex is *forbidden* when no independent transversal contains it.
//! If `v` is joined to every tuple drawn from `r - 1` forced sets lying in
//! pairwise disjoint groups of blocks other than `v`'s own, any independent
//! transversal containing `v` would also contain one of those edges, so `v`
//! is forbidden. Once every vertex of some block is forbidden there is no
//! independent transversal at all.
//!
//! The survivors of a single block are always forced. More generally the
//! survivors `S` of a group of blocks are forced whenever, after removing
//! `S`, some block of the group is empty or some `r` blocks of the group have
//! completely joined remainders: a transversal avoiding `S` would have to
//! pick one of those complete edges.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::builders::Construction;
use crate::error::{Error, Result};
use crate::instance::{BlockId, PartitionedInstance, Role, VertexId};

/// One deduction of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// `members` must meet every independent transversal; they lie in the
    /// listed blocks.
    ForcedSet {
        blocks: Vec<BlockId>,
        id: usize,
        members: Vec<VertexId>,
    },
    /// `vertex` is joined to every tuple over the referenced forced sets.
    Forbidden { vertex: VertexId, witnesses: Vec<usize> },
}

/// Ordered deduction log ending in a block whose vertices are all forbidden.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
    pub conclusion: BlockId,
}

impl Certificate {
    pub fn forced_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::ForcedSet { .. }))
            .count()
    }

    pub fn forbidden_steps(&self) -> usize {
        self.steps.len() - self.forced_steps()
    }

    pub fn forbidden_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Forbidden { vertex, .. } => Some(*vertex),
            _ => None,
        })
    }
}

/// Runs the propagation to a fixpoint; `None` means inconclusive.
pub fn propagate_certificate(inst: &PartitionedInstance) -> Option<Certificate> {
    propagate_certificate_filtered(inst, |_, _| true)
}

/// As [`propagate_certificate`], but a vertex in block `a` may only use
/// witness blocks `b` with `allow(a, b)`.
pub fn propagate_certificate_filtered(
    inst: &PartitionedInstance,
    allow: impl Fn(BlockId, BlockId) -> bool,
) -> Option<Certificate> {
    Propagator::new(inst, allow).run()
}

type ForcedKey = (Vec<BlockId>, Vec<VertexId>);

struct Propagator<'a, F> {
    inst: &'a PartitionedInstance,
    allow: F,
    forbidden: Vec<bool>,
    survivors: Vec<usize>,
    steps: Vec<Step>,
    forced_ids: HashMap<ForcedKey, usize>,
    /// Group analysis memo: (group blocks, group part of the neighbourhood)
    /// to the forced set found for it. Hits stay valid as vertices become
    /// forbidden; misses are only remembered for the current round.
    group_memo: HashMap<ForcedKey, ForcedKey>,
    group_misses: HashSet<ForcedKey>,
    mark: Vec<u32>,
    stamp: u32,
}

impl<'a, F: Fn(BlockId, BlockId) -> bool> Propagator<'a, F> {
    fn new(inst: &'a PartitionedInstance, allow: F) -> Self {
        Propagator {
            inst,
            allow,
            forbidden: vec![false; inst.num_vertices()],
            survivors: inst.blocks().iter().map(|b| b.members.len()).collect(),
            steps: Vec::new(),
            forced_ids: HashMap::new(),
            group_memo: HashMap::new(),
            group_misses: HashSet::new(),
            mark: vec![0; inst.num_vertices()],
            stamp: 0,
        }
    }

    fn run(mut self) -> Option<Certificate> {
        if let Some(b) = self.survivors.iter().position(|&s| s == 0) {
            return Some(Certificate {
                steps: Vec::new(),
                conclusion: BlockId(b as u32),
            });
        }
        loop {
            let mut changed = false;
            self.group_misses.clear();
            for i in 0..self.inst.num_vertices() {
                if self.forbidden[i] {
                    continue;
                }
                let v = VertexId(i as u32);
                let Some(witnesses) = self.witness(v) else { continue };
                let ids = witnesses.into_iter().map(|key| self.register(key)).collect();
                self.steps.push(Step::Forbidden {
                    vertex: v,
                    witnesses: ids,
                });
                self.forbidden[i] = true;
                let b = self.inst.block_of(v);
                self.survivors[b.index()] -= 1;
                changed = true;
                if self.survivors[b.index()] == 0 {
                    return Some(Certificate {
                        steps: self.steps,
                        conclusion: b,
                    });
                }
            }
            if !changed {
                return None;
            }
        }
    }

    fn register(&mut self, key: ForcedKey) -> usize {
        if let Some(&id) = self.forced_ids.get(&key) {
            return id;
        }
        let id = self.forced_ids.len();
        self.steps.push(Step::ForcedSet {
            id,
            blocks: key.0.clone(),
            members: key.1.clone(),
        });
        self.forced_ids.insert(key, id);
        id
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        self.stamp
    }

    fn survivors_of(&self, b: BlockId) -> Vec<VertexId> {
        self.inst.blocks()[b.index()]
            .members
            .iter()
            .copied()
            .filter(|v| !self.forbidden[v.index()])
            .collect()
    }

    /// Finds `r - 1` forced sets that forbid `v`.
    fn witness(&mut self, v: VertexId) -> Option<Vec<ForcedKey>> {
        let inst = self.inst;
        let r = inst.uniformity();
        let bv = inst.block_of(v);
        let usable: Vec<u32> = inst
            .incident_edges(v)
            .iter()
            .copied()
            .filter(|&e| {
                inst.edge_is_stretched(e as usize)
                    && inst
                        .edge(e as usize)
                        .iter()
                        .all(|&u| u == v || (!self.forbidden[u.index()] && (self.allow)(bv, inst.block_of(u))))
            })
            .collect();
        if usable.is_empty() {
            return None;
        }
        let mut touched: Vec<BlockId> = usable
            .iter()
            .flat_map(|&e| {
                inst.edge(e as usize)
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| inst.block_of(u))
            })
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let group_of = self.groups(v, &usable, &touched)?;

        // neighbourhood part per group
        let mut parts: Vec<Vec<VertexId>> = vec![Vec::new(); r - 1];
        let stamp = self.next_stamp();
        for &e in &usable {
            let mut hit = vec![false; r - 1];
            for &u in inst.edge(e as usize) {
                if u == v {
                    continue;
                }
                let g = group_of[touched.binary_search(&inst.block_of(u)).ok()?];
                if std::mem::replace(&mut hit[g], true) {
                    return None;
                }
                if self.mark[u.index()] != stamp {
                    self.mark[u.index()] = stamp;
                    parts[g].push(u);
                }
            }
        }

        let mut found = Vec::with_capacity(r - 1);
        for (g, mut part) in parts.into_iter().enumerate() {
            part.sort_unstable();
            let blocks: Vec<BlockId> = touched
                .iter()
                .zip(&group_of)
                .filter(|&(_, &x)| x == g)
                .map(|(&b, _)| b)
                .collect();
            let key = (blocks, part);
            if self.group_misses.contains(&key) {
                return None;
            }
            let forced = match self.group_memo.get(&key) {
                Some(f) => f.clone(),
                None => match self.forced_in_group(&key.0, &key.1) {
                    Some(f) => {
                        self.group_memo.insert(key, f.clone());
                        f
                    }
                    None => {
                        self.group_misses.insert(key);
                        return None;
                    }
                },
            };
            found.push(forced);
        }

        // v must see every tuple over the chosen forced sets
        let stamp = self.next_stamp();
        let mut product: u128 = 1;
        let mut which: HashMap<VertexId, usize> = HashMap::new();
        for (g, (_, members)) in found.iter().enumerate() {
            product = product.saturating_mul(members.len() as u128);
            for &u in members {
                self.mark[u.index()] = stamp;
                which.insert(u, g);
            }
        }
        let mut count: u128 = 0;
        for &e in &usable {
            let mut hit = vec![false; r - 1];
            let ok = inst
                .edge(e as usize)
                .iter()
                .filter(|&&u| u != v)
                .all(|&u| self.mark[u.index()] == stamp && !std::mem::replace(&mut hit[which[&u]], true));
            if ok {
                count += 1;
            }
        }
        (count == product).then_some(found)
    }

    /// Splits the touched blocks into `r - 1` groups: blocks that occur
    /// together in an edge through `v` must be in different groups.
    fn groups(&self, v: VertexId, usable: &[u32], touched: &[BlockId]) -> Option<Vec<usize>> {
        let inst = self.inst;
        let r = inst.uniformity();
        if r == 2 {
            return Some(vec![0; touched.len()]);
        }
        let n = touched.len();
        if n > 4096 {
            return None;
        }
        let mut together = vec![false; n * n];
        for &e in usable {
            let idx: Vec<usize> = inst
                .edge(e as usize)
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| touched.binary_search(&inst.block_of(u)).expect("touched"))
                .collect();
            for &a in &idx {
                for &b in &idx {
                    together[a * n + b] = true;
                }
            }
        }
        // components of the complement graph
        let mut group = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if group[start] != usize::MAX {
                continue;
            }
            group[start] = count;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for b in 0..n {
                    if group[b] == usize::MAX && !together[a * n + b] {
                        group[b] = count;
                        stack.push(b);
                    }
                }
            }
            count += 1;
        }
        (count == r - 1).then_some(group)
    }

    /// Looks for a forced subset of `part` inside the blocks of one group.
    fn forced_in_group(&mut self, blocks: &[BlockId], part: &[VertexId]) -> Option<ForcedKey> {
        let inst = self.inst;
        let r = inst.uniformity();
        let stamp = self.next_stamp();
        for &u in part {
            self.mark[u.index()] = stamp;
        }
        let in_part = |mark: &[u32], u: VertexId| mark[u.index()] == stamp;

        // a block whose survivors all lie in the part
        for &b in blocks {
            let seen = part.iter().filter(|&&u| inst.block_of(u) == b).count();
            if seen == self.survivors[b.index()] {
                return Some((vec![b], self.survivors_of(b)));
            }
        }
        if blocks.len() < r {
            return None;
        }
        // r blocks whose remainders are completely joined
        let forbidden = &self.forbidden;
        let in_core = |u: VertexId| {
            !forbidden[u.index()] && !in_part(&self.mark, u) && blocks.binary_search(&inst.block_of(u)).is_ok()
        };
        let mut tried: HashSet<Vec<BlockId>> = HashSet::new();
        for &b0 in blocks {
            let Some(&x) = inst.blocks()[b0.index()].members.iter().find(|&&u| in_core(u)) else {
                continue;
            };
            for &e in inst.incident_edges(x) {
                let edge = inst.edge(e as usize);
                if !inst.edge_is_stretched(e as usize) || !edge.iter().all(|&u| in_core(u)) {
                    continue;
                }
                let mut set: Vec<BlockId> = edge.iter().map(|&u| inst.block_of(u)).collect();
                set.sort_unstable();
                if !tried.insert(set.clone()) {
                    continue;
                }
                if cores_complete(inst, &set, &in_core) {
                    let members = part
                        .iter()
                        .copied()
                        .filter(|&u| set.binary_search(&inst.block_of(u)).is_ok())
                        .collect();
                    return Some((set, members));
                }
            }
        }
        None
    }
}

/// True when the core vertices of the `r` distinct blocks `set` span a
/// complete r-partite hypergraph.
fn cores_complete(inst: &PartitionedInstance, set: &[BlockId], in_core: &impl Fn(VertexId) -> bool) -> bool {
    let cores: Vec<Vec<VertexId>> = set
        .iter()
        .map(|b| {
            inst.blocks()[b.index()]
                .members
                .iter()
                .copied()
                .filter(|&u| in_core(u))
                .collect()
        })
        .collect();
    let Some(smallest) = cores.iter().min_by_key(|c| c.len()) else {
        return false;
    };
    let product = cores.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if product == 0 {
        return true;
    }
    let mut count: u128 = 0;
    for &x in smallest {
        for &e in inst.incident_edges(x) {
            let edge = inst.edge(e as usize);
            let mut blocks: Vec<BlockId> = edge.iter().map(|&u| inst.block_of(u)).collect();
            blocks.sort_unstable();
            if blocks == set && edge.iter().all(|&u| in_core(u)) {
                count += 1;
            }
        }
    }
    count == product
}

/// Replays a certificate without search. Structurally broken certificates
/// (unknown ids, references to later steps) are errors; a well-formed step
/// that does not hold makes the result `false`.
pub fn check_certificate(inst: &PartitionedInstance, cert: &Certificate) -> Result<bool> {
    let r = inst.uniformity();
    let mut forbidden = vec![false; inst.num_vertices()];
    let mut forced: HashMap<usize, (Vec<BlockId>, Vec<VertexId>)> = HashMap::new();
    for (i, step) in cert.steps.iter().enumerate() {
        match step {
            Step::ForcedSet { id, blocks, members } => {
                for &b in blocks {
                    inst.block(b)?;
                }
                for &u in members {
                    inst.vertex(u)?;
                }
                if forced.contains_key(id) {
                    return Err(Error::MalformedCertificate(format!(
                        "step {i}: forced set {id} defined twice"
                    )));
                }
                if !forced_set_holds(inst, &forbidden, blocks, members) {
                    return Ok(false);
                }
                forced.insert(*id, (blocks.clone(), members.clone()));
            }
            Step::Forbidden { vertex, witnesses } => {
                inst.vertex(*vertex)?;
                let mut sets = Vec::with_capacity(witnesses.len());
                for w in witnesses {
                    let set = forced.get(w).ok_or_else(|| {
                        Error::MalformedCertificate(format!("step {i}: forced set {w} is not defined before use"))
                    })?;
                    sets.push(set);
                }
                if sets.len() != r - 1 {
                    return Ok(false);
                }
                let mut used: HashSet<BlockId> = HashSet::from([inst.block_of(*vertex)]);
                for (blocks, _) in &sets {
                    for b in blocks {
                        if !used.insert(*b) {
                            return Ok(false);
                        }
                    }
                }
                if !joined(inst, &forbidden, *vertex, &sets) {
                    return Ok(false);
                }
                forbidden[vertex.index()] = true;
            }
        }
    }
    let block = inst.block(cert.conclusion)?;
    Ok(block.members.iter().all(|u| forbidden[u.index()]))
}

fn forced_set_holds(inst: &PartitionedInstance, forbidden: &[bool], blocks: &[BlockId], members: &[VertexId]) -> bool {
    let r = inst.uniformity();
    let mut sorted = blocks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() || sorted.len() != blocks.len() {
        return false;
    }
    let members: HashSet<VertexId> = members.iter().copied().collect();
    if members
        .iter()
        .any(|u| sorted.binary_search(&inst.block_of(*u)).is_err())
    {
        return false;
    }
    let in_core = |u: VertexId| !forbidden[u.index()] && !members.contains(&u);
    let core_len = |b: BlockId| inst.blocks()[b.index()].members.iter().filter(|&&u| in_core(u)).count();
    if sorted.iter().any(|&b| core_len(b) == 0) {
        return true;
    }
    if sorted.len() < r {
        return false;
    }
    // every r-subset of the listed blocks
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let set: Vec<BlockId> = idx.iter().map(|&i| sorted[i]).collect();
        if cores_complete(inst, &set, &in_core) {
            return true;
        }
        let mut pos = r;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            if idx[pos] < sorted.len() - r + pos {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn joined(
    inst: &PartitionedInstance,
    forbidden: &[bool],
    v: VertexId,
    sets: &[&(Vec<BlockId>, Vec<VertexId>)],
) -> bool {
    let mut which: HashMap<VertexId, usize> = HashMap::new();
    let mut product: u128 = 1;
    for (g, (_, members)) in sets.iter().enumerate() {
        let alive: Vec<VertexId> = members.iter().copied().filter(|u| !forbidden[u.index()]).collect();
        product = product.saturating_mul(alive.len() as u128);
        for u in alive {
            which.insert(u, g);
        }
    }
    let mut count: u128 = 0;
    for &e in inst.incident_edges(v) {
        let mut hit = vec![false; sets.len()];
        let ok = inst
            .edge(e as usize)
            .iter()
            .filter(|&&u| u != v)
            .all(|u| which.get(u).is_some_and(|&g| !std::mem::replace(&mut hit[g], true)));
        if ok {
            count += 1;
        }
    }
    count == product
}

/// Certificate for a construction too large to materialize, obtained on its
/// skeleton with witnesses restricted to strictly lower grades.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionCertificate {
    pub certificate: Option<Certificate>,
    pub skeleton_vertices: usize,
    pub skeleton_edges: usize,
    /// The certificate replays on the skeleton.
    pub replayed: bool,
    /// Every skeleton vertex has the same downward neighbourhood size as its
    /// class in the full construction, and the conclusion is the top block.
    pub lifts: bool,
}

impl ConstructionCertificate {
    pub fn is_valid(&self) -> bool {
        self.certificate.is_some() && self.replayed && self.lifts
    }
}

/// Every deduction on the skeleton only inspects the downward closure of the
/// forbidden vertex, which is isomorphic to the downward closure of each of
/// its copies, so the certificate transfers to the full construction.
pub fn certify_construction(c: &Construction) -> Result<ConstructionCertificate> {
    let skeleton = c.skeleton()?;
    let grade = |b: BlockId| skeleton.blocks()[b.index()].grade.unwrap_or(0);
    let certificate = propagate_certificate_filtered(&skeleton, |a, b| grade(b) < grade(a));
    let replayed = match &certificate {
        Some(cert) => check_certificate(&skeleton, cert)?,
        None => false,
    };
    let profile = c.profile();
    let mut lifts = certificate
        .as_ref()
        .is_some_and(|cert| grade(cert.conclusion) as usize == c.grades());
    for (i, info) in skeleton.vertices().iter().enumerate() {
        let v = VertexId(i as u32);
        let g = grade(info.block);
        let down = skeleton
            .incident_edges(v)
            .iter()
            .filter(|&&e| {
                skeleton
                    .edge(e as usize)
                    .iter()
                    .all(|&u| u == v || grade(skeleton.block_of(u)) < g)
            })
            .count() as u128;
        let expected = match (g, info.role) {
            (1, _) | (_, Some(Role::Light)) => 0,
            _ => profile
                .classes
                .iter()
                .find(|cl| cl.grade == g)
                .map_or(0, |cl| cl.heavy_degree),
        };
        if down != expected {
            lifts = false;
            break;
        }
    }
    Ok(ConstructionCertificate {
        certificate,
        skeleton_vertices: skeleton.num_vertices(),
        skeleton_edges: skeleton.num_edges(),
        replayed,
        lifts,
    })
}
