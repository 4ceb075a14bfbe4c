//! Recursive description of the graded constructions.
//!
//! Every construction is a tower of units. The grade-1 unit is a gadget: one
//! or more blocks of size `t`, block `i` holding `m_i` heavy vertices, with a
//! complete multipartite hypergraph on the heavy parts when there is more
//! than one block. Its light vertices form the unit's forced set. The
//! grade-`j` unit (`j >= 2`) is one new block of `h_j` heavy and `t - h_j`
//! light vertices plus `h_j (r-1)` private copies of the grade-`(j-1)` unit;
//! heavy vertex `i` is joined to every tuple that takes one vertex from the
//! forced set of each copy in its private `(r-1)`-tuple.
//!
//! The number of blocks grows like a product of the heavy counts, so at the
//! parameters of interest only the template itself is small. [`Construction`]
//! therefore offers three views: the full instance ([`Construction::materialize`]),
//! exact metrics computed from the template ([`Construction::profile`]), and
//! a skeleton with one representative copy per grade used for certification
//! ([`Construction::skeleton`]).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{InstanceBuilder, PartitionedInstance, Role, VertexId};
use crate::rational::ratio;

/// Materialization refuses instances above this many vertices or edges.
pub const MATERIALIZE_LIMIT: u64 = 30_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildKind {
    Forest,
    BoundedDegree,
    LocalDegree,
    Hypergraph,
    HypergraphBoundedDegree,
    Stars,
}

impl std::str::FromStr for BuildKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BuildKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = BuildKind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown kind {s:?}; expected one of {}", names.join(", "))
        })
    }
}

impl BuildKind {
    pub const ALL: [BuildKind; 6] = [
        BuildKind::Forest,
        BuildKind::BoundedDegree,
        BuildKind::LocalDegree,
        BuildKind::Hypergraph,
        BuildKind::HypergraphBoundedDegree,
        BuildKind::Stars,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuildKind::Forest => "forest",
            BuildKind::BoundedDegree => "bounded_degree",
            BuildKind::LocalDegree => "local_degree",
            BuildKind::Hypergraph => "hypergraph",
            BuildKind::HypergraphBoundedDegree => "hypergraph_bounded_degree",
            BuildKind::Stars => "stars",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    kind: BuildKind,
    r: usize,
    t: u64,
    gadget: Vec<u64>,
    heavy: Vec<u64>,
    meta: BTreeMap<String, String>,
}

/// One class of isomorphic blocks in a construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockClass {
    pub grade: u32,
    /// Position of the block inside its unit (gadgets have several).
    pub position: usize,
    pub heavy: u64,
    pub light: u64,
    pub heavy_degree: u128,
    pub light_degree: u128,
    /// Largest number of edges from one vertex of this block into one other
    /// block; graphs only.
    pub local_degree: Option<u64>,
    pub degree: u128,
    #[serde(serialize_with = "ser_display")]
    pub multiplicity: BigUint,
}

/// Metrics of the full construction, computed from the template.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionProfile {
    pub r: usize,
    pub t: u64,
    pub grades: usize,
    pub classes: Vec<BlockClass>,
    #[serde(serialize_with = "ser_display")]
    pub num_blocks: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub num_vertices: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub num_edges: BigUint,
    pub max_degree: u128,
    pub local_degree: Option<u64>,
    #[serde(serialize_with = "ser_display")]
    pub max_block_avg_degree: BigRational,
    pub max_block_degree: u128,
    pub thickness: u64,
    pub is_forest: Option<bool>,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl Construction {
    pub fn new(kind: BuildKind, r: usize, t: u64, gadget: Vec<u64>, heavy: Vec<u64>) -> Result<Self> {
        if r < 2 {
            return Err(Error::parameter("uniformity must be at least 2"));
        }
        if t == 0 {
            return Err(Error::parameter("t must be positive"));
        }
        if gadget.is_empty() || (gadget.len() > 1 && gadget.len() != r) {
            return Err(Error::parameter(format!(
                "grade-1 gadget must have 1 or r = {r} blocks, got {}",
                gadget.len()
            )));
        }
        if gadget.len() == 1 && gadget[0] != 0 {
            return Err(Error::parameter("a single-block gadget has no heavy vertices"));
        }
        if let Some(m) = gadget.iter().chain(&heavy).find(|&&m| m > t) {
            return Err(Error::parameter(format!("heavy count {m} exceeds t = {t}")));
        }
        let c = Construction {
            kind,
            r,
            t,
            gadget,
            heavy,
            meta: BTreeMap::new(),
        };
        if c.grades() > 1 && c.forced_size(1) == 0 {
            return Err(Error::parameter("grade-1 gadget has an empty forced set"));
        }
        Ok(c)
    }

    pub(crate) fn set_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.insert(key.to_string(), value.to_string());
    }

    pub fn kind(&self) -> BuildKind {
        self.kind
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Heavy part sizes of the grade-1 gadget blocks.
    pub fn gadget(&self) -> &[u64] {
        &self.gadget
    }

    /// Heavy counts of grades `2..=k`.
    pub fn heavy_counts(&self) -> &[u64] {
        &self.heavy
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn grades(&self) -> usize {
        1 + self.heavy.len()
    }

    /// Size of the forced set (light vertices of the root blocks) of a unit.
    pub fn forced_size(&self, grade: usize) -> u64 {
        if grade == 1 {
            self.gadget.iter().map(|m| self.t - m).sum()
        } else {
            self.t - self.heavy[grade - 2]
        }
    }

    fn copies_per_heavy(&self) -> u64 {
        self.r as u64 - 1
    }

    /// Number of copies of the grade-`g` unit in the full construction.
    pub fn multiplicity(&self, grade: usize) -> BigUint {
        let mut m = BigUint::one();
        for g in (grade + 1..=self.grades()).rev() {
            m *= BigUint::from(self.heavy[g - 2]) * BigUint::from(self.copies_per_heavy());
        }
        m
    }

    fn pow(base: u64, e: usize) -> u128 {
        (base as u128).pow(e as u32)
    }

    fn light_degree(&self, grade: usize) -> u128 {
        if grade < self.grades() {
            Self::pow(self.forced_size(grade), self.r - 2)
        } else {
            0
        }
    }

    pub fn profile(&self) -> ConstructionProfile {
        let (r, t, k) = (self.r, self.t, self.grades());
        let graph = r == 2;
        let mut classes = Vec::new();
        let gadget_multi = self.gadget.len() > 1;
        let light1 = self.light_degree(1);
        for (i, &m) in self.gadget.iter().enumerate() {
            let heavy_degree: u128 = if gadget_multi {
                self.gadget
                    .iter()
                    .enumerate()
                    .filter(|&(l, _)| l != i)
                    .map(|(_, &x)| x as u128)
                    .product()
            } else {
                0
            };
            let local = graph.then(|| {
                let heavy_local = if gadget_multi && m > 0 { self.gadget[1 - i] } else { 0 };
                let light_local = if light1 > 0 && m < t { 1 } else { 0 };
                heavy_local.max(light_local)
            });
            classes.push(BlockClass {
                grade: 1,
                position: i,
                heavy: m,
                light: t - m,
                heavy_degree,
                light_degree: light1,
                local_degree: local,
                degree: m as u128 * heavy_degree + (t - m) as u128 * light1,
                multiplicity: self.multiplicity(1),
            });
        }
        for g in 2..=k {
            let h = self.heavy[g - 2];
            let heavy_degree = Self::pow(self.forced_size(g - 1), r - 1);
            let light_degree = self.light_degree(g);
            let local = graph.then(|| {
                let heavy_local = if h == 0 {
                    0
                } else if g == 2 {
                    self.gadget.iter().map(|m| t - m).max().unwrap_or(0)
                } else {
                    self.forced_size(g - 1)
                };
                let light_local = if light_degree > 0 && h < t { 1 } else { 0 };
                heavy_local.max(light_local)
            });
            classes.push(BlockClass {
                grade: g as u32,
                position: 0,
                heavy: h,
                light: t - h,
                heavy_degree,
                light_degree,
                local_degree: local,
                degree: h as u128 * heavy_degree + (t - h) as u128 * light_degree,
                multiplicity: self.multiplicity(g),
            });
        }
        let num_blocks: BigUint = classes.iter().map(|c| c.multiplicity.clone()).sum();
        let mut num_edges = BigUint::zero();
        if gadget_multi {
            let internal: u128 = self.gadget.iter().map(|&m| m as u128).product();
            num_edges += self.multiplicity(1) * BigUint::from(internal);
        }
        for g in 2..=k {
            let per_unit = self.heavy[g - 2] as u128 * Self::pow(self.forced_size(g - 1), r - 1);
            num_edges += self.multiplicity(g) * BigUint::from(per_unit);
        }
        let max_degree = classes
            .iter()
            .flat_map(|c| {
                let h = if c.heavy > 0 { c.heavy_degree } else { 0 };
                let l = if c.light > 0 { c.light_degree } else { 0 };
                [h, l]
            })
            .max()
            .unwrap_or(0);
        let max_block_avg_degree = classes
            .iter()
            .map(|c| ratio(c.degree, t))
            .max()
            .unwrap_or_else(BigRational::zero);
        let max_block_degree = classes.iter().map(|c| c.degree).max().unwrap_or(0);
        let local_degree = graph.then(|| classes.iter().filter_map(|c| c.local_degree).max().unwrap_or(0));
        let is_forest = graph.then(|| !gadget_multi || self.gadget.iter().filter(|&&m| m >= 2).count() < 2);
        ConstructionProfile {
            r,
            t,
            grades: k,
            num_vertices: &num_blocks * BigUint::from(t),
            num_blocks,
            num_edges,
            classes,
            max_degree,
            local_degree,
            max_block_avg_degree,
            max_block_degree,
            thickness: t,
            is_forest,
        }
    }

    fn check_size(vertices: &BigUint, edges: &BigUint) -> Result<()> {
        let limit = BigUint::from(MATERIALIZE_LIMIT);
        if *vertices > limit || *edges > limit {
            return Err(Error::TooLarge {
                vertices: vertices.to_string(),
                edges: edges.to_string(),
            });
        }
        Ok(())
    }

    /// Builds the full instance. Blocks and vertices are numbered depth-first
    /// over the copies with each unit's root block after its children.
    pub fn materialize(&self) -> Result<PartitionedInstance> {
        let p = self.profile();
        Self::check_size(&p.num_vertices, &p.num_edges)?;
        let mut b = InstanceBuilder::new(self.r);
        self.expand(self.grades(), &mut b);
        self.stamp_meta(&mut b);
        b.finish()
    }

    fn stamp_meta(&self, b: &mut InstanceBuilder) {
        for (k, v) in &self.meta {
            b.set_meta(k.clone(), v);
        }
        b.set_meta("builder", self.kind.name());
        b.set_meta("t", self.t);
        b.set_meta("r", self.r);
    }

    fn build_gadget(&self, b: &mut InstanceBuilder) -> Vec<VertexId> {
        let mut parts = Vec::with_capacity(self.gadget.len());
        let mut forced = Vec::new();
        for &m in &self.gadget {
            let blk = b.add_block(Some(1));
            parts.push(b.add_vertices(blk, m, Some(Role::Heavy)));
            forced.extend(b.add_vertices(blk, self.t - m, Some(Role::Light)));
        }
        if parts.len() > 1 {
            for_each_tuple(&parts, |tuple| b.add_edge(tuple.to_vec()));
        }
        forced
    }

    /// Adds a grade-`grade` root block whose heavy vertices join the tuples
    /// given by `tuples_for(i)`; returns the block's light vertices.
    fn build_root(
        &self,
        grade: usize,
        b: &mut InstanceBuilder,
        mut tuples_for: impl FnMut(usize) -> Vec<Vec<VertexId>>,
    ) -> Vec<VertexId> {
        let h = self.heavy[grade - 2];
        let blk = b.add_block(Some(grade as u32));
        let heavy = b.add_vertices(blk, h, Some(Role::Heavy));
        let light = b.add_vertices(blk, self.t - h, Some(Role::Light));
        for (i, &v) in heavy.iter().enumerate() {
            let sets = tuples_for(i);
            for_each_tuple(&sets, |tuple| {
                let mut e = Vec::with_capacity(self.r);
                e.push(v);
                e.extend_from_slice(tuple);
                b.add_edge(e);
            });
        }
        light
    }

    fn expand(&self, grade: usize, b: &mut InstanceBuilder) -> Vec<VertexId> {
        if grade == 1 {
            return self.build_gadget(b);
        }
        let h = self.heavy[grade - 2] as usize;
        let per = self.r - 1;
        let children: Vec<Vec<Vec<VertexId>>> = (0..h)
            .map(|_| (0..per).map(|_| self.expand(grade - 1, b)).collect())
            .collect();
        self.build_root(grade, b, |i| children[i].clone())
    }

    /// One representative unit per grade (`r-1` of them below the top), all
    /// heavy vertices of a representative sharing the representatives one
    /// grade down. Deductions that only look downwards in grade transfer to
    /// every copy of the full construction.
    pub fn skeleton(&self) -> Result<PartitionedInstance> {
        let (k, per) = (self.grades(), self.r - 1);
        let reps = |g: usize| if g == k { 1 } else { per };
        let mut vertices = BigUint::zero();
        let mut edges = BigUint::zero();
        for g in 1..=k {
            let blocks = if g == 1 { self.gadget.len() } else { 1 };
            vertices += BigUint::from((reps(g) * blocks) as u64 * self.t);
            let per_rep = if g == 1 {
                if self.gadget.len() > 1 {
                    self.gadget.iter().map(|&m| m as u128).product()
                } else {
                    0
                }
            } else {
                self.heavy[g - 2] as u128 * Self::pow(self.forced_size(g - 1), self.r - 1)
            };
            edges += BigUint::from(reps(g) as u128 * per_rep);
        }
        Self::check_size(&vertices, &edges)?;

        let mut b = InstanceBuilder::new(self.r);
        let mut below: Vec<Vec<VertexId>> = (0..reps(1)).map(|_| self.build_gadget(&mut b)).collect();
        for g in 2..=k {
            let current: Vec<Vec<VertexId>> = (0..reps(g))
                .map(|_| self.build_root(g, &mut b, |_| below.clone()))
                .collect();
            below = current;
        }
        self.stamp_meta(&mut b);
        b.set_meta("skeleton", "true");
        b.finish()
    }
}

impl ConstructionProfile {
    pub fn num_blocks_u64(&self) -> Option<u64> {
        self.num_blocks.to_u64()
    }
}

/// Calls `f` on every tuple picking one element from each set, in
/// lexicographic order of positions.
pub(crate) fn for_each_tuple<T: Copy>(sets: &[Vec<T>], mut f: impl FnMut(&[T])) {
    if sets.iter().any(|s| s.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; sets.len()];
    let mut tuple: Vec<T> = sets.iter().map(|s| s[0]).collect();
    loop {
        f(&tuple);
        let mut pos = sets.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sets[pos].len() {
                tuple[pos] = sets[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = sets[pos][0];
        }
    }
}
