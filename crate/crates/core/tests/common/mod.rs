#![allow(dead_code)]

use indtrans::instance::{InstanceBuilder, PartitionedInstance, VertexId};

/// Counts independent transversals by walking every transversal; shares no
/// code with the library search.
pub fn naive_count(inst: &PartitionedInstance) -> u64 {
    let blocks: Vec<&[VertexId]> = inst.blocks().iter().map(|b| b.members.as_slice()).collect();
    if blocks.iter().any(|b| b.is_empty()) {
        return 0;
    }
    let edges: Vec<Vec<usize>> = inst.edges().map(|e| e.iter().map(|v| v.index()).collect()).collect();
    let mut idx = vec![0usize; blocks.len()];
    let mut picked = vec![false; inst.num_vertices()];
    let mut count = 0;
    loop {
        for (b, &i) in idx.iter().enumerate() {
            picked[blocks[b][i].index()] = true;
        }
        if !edges.iter().any(|e| e.iter().all(|&v| picked[v])) {
            count += 1;
        }
        for (b, &i) in idx.iter().enumerate() {
            picked[blocks[b][i].index()] = false;
        }
        let mut pos = 0;
        loop {
            if pos == blocks.len() {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < blocks[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Blocks of the given sizes with the listed edges (vertex ids in block order).
pub fn instance(r: usize, sizes: &[u64], edges: &[&[u32]]) -> PartitionedInstance {
    let mut b = InstanceBuilder::new(r);
    for &s in sizes {
        let blk = b.add_block(None);
        b.add_vertices(blk, s, None);
    }
    for e in edges {
        b.add_edge(e.iter().map(|&v| VertexId(v)).collect());
    }
    b.finish().unwrap()
}

/// No independent transversal, yet propagation finds nothing to forbid:
/// every vertex sees exactly one vertex in each of two other blocks.
pub fn propagation_gap_instance() -> PartitionedInstance {
    instance(
        2,
        &[2, 2, 2, 2],
        &[&[0, 5], &[0, 6], &[1, 4], &[1, 7], &[2, 4], &[2, 6], &[3, 5], &[3, 7]],
    )
}
