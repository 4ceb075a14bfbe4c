//! Vertex-partitioned r-uniform hypergraphs.
//!
//! An instance is immutable once [`InstanceBuilder::finish`] has validated it:
//! blocks partition the vertex set, every edge has exactly `r` distinct
//! vertices and there are no duplicate edges. Ids are dense and assigned in
//! construction order, so two identical build sequences give identical
//! instances.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct BlockId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl BlockId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.0)
    }
}

/// Construction role of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Carries the complete joins to lower-grade forced sets.
    Heavy,
    /// Degree at most one in the graph constructions.
    Light,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexInfo {
    pub block: BlockId,
    pub role: Option<Role>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: BlockId,
    pub members: Vec<VertexId>,
    pub grade: Option<u32>,
    /// Isolated filler block appended by `pad_blocks`.
    pub padding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedInstance {
    r: usize,
    vertices: Vec<VertexInfo>,
    blocks: Vec<Block>,
    /// Flattened edge list, `r` ids per edge, each edge sorted ascending.
    edges: Vec<VertexId>,
    meta: BTreeMap<String, String>,
    /// Edge ids incident to each vertex, ascending.
    incidence: Vec<Vec<u32>>,
}

impl PartitionedInstance {
    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn vertex(&self, v: VertexId) -> Result<&VertexInfo> {
        self.vertices.get(v.index()).ok_or(Error::UnknownVertex(v))
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    pub fn block_of(&self, v: VertexId) -> BlockId {
        self.vertices[v.index()].block
    }

    pub fn block(&self, b: BlockId) -> Result<&Block> {
        self.blocks.get(b.index()).ok_or(Error::UnknownBlock(b))
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Grade of the block containing `v`.
    pub fn grade_of(&self, v: VertexId) -> Option<u32> {
        self.blocks[self.block_of(v).index()].grade
    }

    pub fn edge(&self, e: usize) -> &[VertexId] {
        &self.edges[e * self.r..(e + 1) * self.r]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[VertexId]> + '_ {
        self.edges.chunks_exact(self.r)
    }

    /// Ids of the edges containing `v`.
    pub fn incident_edges(&self, v: VertexId) -> &[u32] {
        &self.incidence[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.index()].len()
    }

    /// Neighbours of `v` in a graph, in edge order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v.index()]
            .iter()
            .flat_map(move |&e| self.edge(e as usize).iter().copied())
            .filter(move |&w| w != v)
    }

    /// Looks up the id of the edge with exactly these vertices.
    pub fn find_edge(&self, vertices: &[VertexId]) -> Option<usize> {
        if vertices.len() != self.r || vertices.iter().any(|v| v.index() >= self.vertices.len()) {
            return None;
        }
        let mut key = vertices.to_vec();
        key.sort_unstable();
        let pivot = key.iter().copied().min_by_key(|&v| self.incidence[v.index()].len())?;
        self.incidence[pivot.index()]
            .iter()
            .map(|&e| e as usize)
            .find(|&e| self.edge(e) == key.as_slice())
    }

    pub fn has_edge(&self, vertices: &[VertexId]) -> bool {
        self.find_edge(vertices).is_some()
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    /// The block size the instance was built for, from metadata when present,
    /// otherwise the smallest non-padding block.
    pub fn nominal_t(&self) -> Option<u64> {
        self.meta.get("t").and_then(|t| t.parse().ok()).or_else(|| {
            self.blocks
                .iter()
                .filter(|b| !b.padding)
                .map(|b| b.members.len() as u64)
                .min()
        })
    }

    /// Rebuilds the instance with vertex `v` renamed to `perm[v]`.
    ///
    /// Blocks keep their ids; members and edges are re-sorted, so the result
    /// is the canonical form of the relabeled hypergraph.
    pub fn relabeled(&self, perm: &[VertexId]) -> Result<Self> {
        if perm.len() != self.vertices.len() {
            return Err(Error::InvalidInstance(format!(
                "permutation has {} entries for {} vertices",
                perm.len(),
                self.vertices.len()
            )));
        }
        let mut b = InstanceBuilder::new(self.r);
        let mut vertices = vec![None; self.vertices.len()];
        for (old, info) in self.vertices.iter().enumerate() {
            let new = perm[old].index();
            if new >= vertices.len() || vertices[new].is_some() {
                return Err(Error::InvalidInstance("not a permutation".into()));
            }
            vertices[new] = Some(*info);
        }
        b.vertices = vertices.into_iter().map(Option::unwrap).collect();
        b.blocks = self
            .blocks
            .iter()
            .map(|blk| {
                let mut members: Vec<_> = blk.members.iter().map(|v| perm[v.index()]).collect();
                members.sort_unstable();
                Block { members, ..blk.clone() }
            })
            .collect();
        for e in self.edges() {
            b.add_edge(e.iter().map(|v| perm[v.index()]).collect());
        }
        b.meta = self.meta.clone();
        b.finish()
    }
}

/// Accumulates blocks, vertices and edges; validation happens in `finish`.
#[derive(Debug, Default)]
pub struct InstanceBuilder {
    r: usize,
    vertices: Vec<VertexInfo>,
    blocks: Vec<Block>,
    edges: Vec<VertexId>,
    meta: BTreeMap<String, String>,
}

impl InstanceBuilder {
    pub fn new(r: usize) -> Self {
        InstanceBuilder {
            r,
            ..Default::default()
        }
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Opens a new empty block and returns its id.
    pub fn add_block(&mut self, grade: Option<u32>) -> BlockId {
        let id = BlockId(self.blocks.len() as u32);
        self.blocks.push(Block {
            id,
            members: Vec::new(),
            grade,
            padding: false,
        });
        id
    }

    pub fn mark_padding(&mut self, b: BlockId) {
        self.blocks[b.index()].padding = true;
    }

    /// Appends a fresh vertex to block `b`.
    pub fn add_vertex(&mut self, b: BlockId, role: Option<Role>) -> VertexId {
        let v = VertexId(self.vertices.len() as u32);
        self.vertices.push(VertexInfo { block: b, role });
        self.blocks[b.index()].members.push(v);
        v
    }

    /// Adds `count` vertices with the same role; returns their ids.
    pub fn add_vertices(&mut self, b: BlockId, count: u64, role: Option<Role>) -> Vec<VertexId> {
        (0..count).map(|_| self.add_vertex(b, role)).collect()
    }

    pub fn add_edge(&mut self, mut vertices: Vec<VertexId>) {
        vertices.sort_unstable();
        self.edges.extend_from_slice(&vertices);
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.insert(key.into(), value.to_string());
    }

    pub(crate) fn push_raw_vertex(&mut self, info: VertexInfo) {
        self.vertices.push(info);
    }

    pub(crate) fn push_raw_block(&mut self, block: Block) {
        self.blocks.push(block);
    }

    pub fn finish(self) -> Result<PartitionedInstance> {
        let InstanceBuilder {
            r,
            vertices,
            blocks,
            edges,
            meta,
        } = self;
        if r < 2 {
            return Err(Error::InvalidInstance(format!("uniformity {r} < 2")));
        }
        if edges.len() % r != 0 {
            return Err(Error::InvalidInstance("edge list length not a multiple of r".into()));
        }
        let mut seen = vec![false; vertices.len()];
        for (i, blk) in blocks.iter().enumerate() {
            if blk.id.index() != i {
                return Err(Error::InvalidInstance(format!("block {i} has id {}", blk.id)));
            }
            for &v in &blk.members {
                let info = vertices
                    .get(v.index())
                    .ok_or_else(|| Error::InvalidInstance(format!("{v} in {} does not exist", blk.id)))?;
                if seen[v.index()] || info.block != blk.id {
                    return Err(Error::InvalidInstance(format!("partition violation at {v}")));
                }
                seen[v.index()] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidInstance(format!(
                "partition violation: v{v} is in no block"
            )));
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        let mut distinct = HashSet::with_capacity(edges.len() / r);
        for (e, edge) in edges.chunks_exact(r).enumerate() {
            for w in edge.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidInstance(format!("edge {e} repeats {}", w[0])));
                }
            }
            if let Some(v) = edge.iter().find(|v| v.index() >= vertices.len()) {
                return Err(Error::InvalidInstance(format!("edge {e} uses unknown {v}")));
            }
            if !distinct.insert(edge) {
                return Err(Error::InvalidInstance(format!("duplicate edge {edge:?}")));
            }
            for v in edge {
                incidence[v.index()].push(e as u32);
            }
        }
        Ok(PartitionedInstance {
            r,
            vertices,
            blocks,
            edges,
            meta,
            incidence,
        })
    }
}
