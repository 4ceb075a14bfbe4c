//! Degree metrics used by the existence results and the constructions.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{BlockId, PartitionedInstance, VertexId};
use crate::rational::{ratio, RationalString};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockMetrics {
    pub block_id: BlockId,
    pub size: usize,
    pub degree: u64,
    pub avg_degree: RationalString,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceMetrics {
    pub r: usize,
    pub num_vertices: usize,
    pub num_blocks: usize,
    pub num_edges: usize,
    pub per_block: Vec<BlockMetrics>,
    pub max_block_avg_degree: RationalString,
    pub max_degree: u64,
    /// Only defined for graphs.
    pub local_degree: Option<u64>,
    pub thickness: u64,
    pub stretched_edges: usize,
    pub is_forest: Option<bool>,
}

impl PartitionedInstance {
    /// Degree of every block, indexed by block id.
    ///
    /// For graphs this counts edges with exactly one end in the block; for
    /// r >= 3 it counts stretched edges meeting the block.
    pub fn block_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.num_blocks()];
        let r = self.uniformity();
        let mut seen: Vec<BlockId> = Vec::with_capacity(r);
        for edge in self.edges() {
            seen.clear();
            seen.extend(edge.iter().map(|&v| self.block_of(v)));
            seen.sort_unstable();
            if r == 2 {
                if seen[0] != seen[1] {
                    deg[seen[0].index()] += 1;
                    deg[seen[1].index()] += 1;
                }
            } else if seen.windows(2).all(|w| w[0] != w[1]) {
                for b in &seen {
                    deg[b.index()] += 1;
                }
            }
        }
        deg
    }

    pub fn block_degree(&self, b: BlockId) -> Result<u64> {
        self.block(b)?;
        Ok(self.block_degrees()[b.index()])
    }

    pub fn max_block_average_degree(&self) -> Result<BigRational> {
        if self.num_blocks() == 0 {
            return Err(Error::EmptyPartition);
        }
        let deg = self.block_degrees();
        Ok(self
            .blocks()
            .iter()
            .filter(|b| !b.members.is_empty())
            .map(|b| ratio(deg[b.id.index()], b.members.len() as u64))
            .max()
            .unwrap_or_else(BigRational::zero))
    }

    pub fn max_degree(&self) -> u64 {
        (0..self.num_vertices())
            .map(|v| self.degree(VertexId(v as u32)) as u64)
            .max()
            .unwrap_or(0)
    }

    /// Largest number of edges from one vertex into a single other block.
    pub fn local_degree(&self) -> Result<u64> {
        if self.uniformity() != 2 {
            return Err(Error::UnsupportedUniformity {
                op: "local_degree",
                r: self.uniformity(),
            });
        }
        let mut best = 0u64;
        let mut counts: HashMap<BlockId, u64> = HashMap::new();
        for v in 0..self.num_vertices() {
            let v = VertexId(v as u32);
            let own = self.block_of(v);
            counts.clear();
            for w in self.neighbors(v) {
                let b = self.block_of(w);
                if b != own {
                    *counts.entry(b).or_default() += 1;
                }
            }
            best = best.max(counts.values().copied().max().unwrap_or(0));
        }
        Ok(best)
    }

    /// Whether `edge` has its endpoints in pairwise distinct blocks.
    pub fn is_stretched(&self, edge: &[VertexId]) -> Result<bool> {
        let e = self.find_edge(edge).ok_or_else(|| Error::ForeignEdge(edge.to_vec()))?;
        Ok(self.edge_is_stretched(e))
    }

    pub(crate) fn edge_is_stretched(&self, e: usize) -> bool {
        let mut blocks: Vec<BlockId> = self.edge(e).iter().map(|&v| self.block_of(v)).collect();
        blocks.sort_unstable();
        blocks.windows(2).all(|w| w[0] != w[1])
    }

    pub fn count_stretched(&self) -> usize {
        (0..self.num_edges()).filter(|&e| self.edge_is_stretched(e)).count()
    }

    pub fn is_forest(&self) -> Result<bool> {
        if self.uniformity() != 2 {
            return Err(Error::UnsupportedUniformity {
                op: "is_forest",
                r: self.uniformity(),
            });
        }
        let mut uf = UnionFind::new(self.num_vertices());
        Ok(self.edges().all(|e| uf.union(e[0].index(), e[1].index())))
    }

    /// Minimum block size. Padding blocks only count when they are at
    /// least as large as the smallest regular block.
    pub fn thickness(&self) -> u64 {
        let regular = self
            .blocks()
            .iter()
            .filter(|b| !b.padding)
            .map(|b| b.members.len() as u64)
            .min();
        match regular {
            Some(t) => t,
            None => self.blocks().iter().map(|b| b.members.len() as u64).min().unwrap_or(0),
        }
    }

    pub fn metrics(&self) -> Result<InstanceMetrics> {
        let deg = self.block_degrees();
        let per_block = self
            .blocks()
            .iter()
            .map(|b| BlockMetrics {
                block_id: b.id,
                size: b.members.len(),
                degree: deg[b.id.index()],
                avg_degree: if b.members.is_empty() {
                    BigRational::zero().into()
                } else {
                    ratio(deg[b.id.index()], b.members.len() as u64).into()
                },
            })
            .collect();
        let graph = self.uniformity() == 2;
        Ok(InstanceMetrics {
            r: self.uniformity(),
            num_vertices: self.num_vertices(),
            num_blocks: self.num_blocks(),
            num_edges: self.num_edges(),
            per_block,
            max_block_avg_degree: self.max_block_average_degree()?.into(),
            max_degree: self.max_degree(),
            local_degree: if graph { Some(self.local_degree()?) } else { None },
            thickness: self.thickness(),
            stretched_edges: self.count_stretched(),
            is_forest: if graph { Some(self.is_forest()?) } else { None },
        })
    }
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceBuilder;

    fn edgeless(blocks: usize, size: u64) -> PartitionedInstance {
        let mut b = InstanceBuilder::new(2);
        for _ in 0..blocks {
            let id = b.add_block(None);
            b.add_vertices(id, size, None);
        }
        b.finish().unwrap()
    }

    #[test]
    fn edgeless_metrics_are_zero() {
        let inst = edgeless(3, 4);
        assert_eq!(inst.block_degree(BlockId(1)).unwrap(), 0);
        assert!(inst.max_block_average_degree().unwrap().is_zero());
        assert_eq!(inst.max_degree(), 0);
        assert_eq!(inst.local_degree().unwrap(), 0);
        assert!(inst.is_forest().unwrap());
        assert_eq!(inst.thickness(), 4);
        assert!(matches!(inst.block_degree(BlockId(3)), Err(Error::UnknownBlock(_))));
    }

    #[test]
    fn single_cross_edge_gives_half() {
        let mut b = InstanceBuilder::new(2);
        for _ in 0..2 {
            let id = b.add_block(None);
            b.add_vertices(id, 2, None);
        }
        b.add_edge(vec![VertexId(0), VertexId(2)]);
        let inst = b.finish().unwrap();
        assert_eq!(inst.max_block_average_degree().unwrap(), ratio(1, 2));
    }

    #[test]
    fn triangle_is_not_a_forest() {
        let mut b = InstanceBuilder::new(2);
        for _ in 0..3 {
            let id = b.add_block(None);
            b.add_vertex(id, None);
        }
        b.add_edge(vec![VertexId(0), VertexId(1)]);
        b.add_edge(vec![VertexId(1), VertexId(2)]);
        b.add_edge(vec![VertexId(0), VertexId(2)]);
        assert!(!b.finish().unwrap().is_forest().unwrap());
    }

    #[test]
    fn complete_bipartite_local_degree() {
        // K_{3,2} between two blocks of size 4.
        let mut b = InstanceBuilder::new(2);
        let x = b.add_block(None);
        let y = b.add_block(None);
        let xs = b.add_vertices(x, 4, None);
        let ys = b.add_vertices(y, 4, None);
        for &u in &xs[..3] {
            for &w in &ys[..2] {
                b.add_edge(vec![u, w]);
            }
        }
        let inst = b.finish().unwrap();
        assert_eq!(inst.local_degree().unwrap(), 3);
        assert!(!inst.is_forest().unwrap());
    }

    #[test]
    fn stretched_edges_in_hypergraphs() {
        let mut b = InstanceBuilder::new(3);
        let blocks: Vec<_> = (0..3).map(|_| b.add_block(None)).collect();
        for &id in &blocks {
            b.add_vertices(id, 2, None);
        }
        // blocks (0, 1, 2) and (0, 0, 1)
        b.add_edge(vec![VertexId(0), VertexId(2), VertexId(4)]);
        b.add_edge(vec![VertexId(0), VertexId(1), VertexId(3)]);
        let inst = b.finish().unwrap();
        assert!(inst.is_stretched(&[VertexId(4), VertexId(0), VertexId(2)]).unwrap());
        assert!(!inst.is_stretched(&[VertexId(0), VertexId(1), VertexId(3)]).unwrap());
        assert!(matches!(
            inst.is_stretched(&[VertexId(0), VertexId(1), VertexId(2)]),
            Err(Error::ForeignEdge(_))
        ));
        // only the stretched edge counts towards block degrees
        assert_eq!(inst.block_degrees(), vec![1, 1, 1]);
        assert!(matches!(
            inst.local_degree(),
            Err(Error::UnsupportedUniformity { r: 3, .. })
        ));
    }
}
