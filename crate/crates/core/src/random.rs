//! Seeded random instances for the empirical existence and counting checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::instance::{InstanceBuilder, PartitionedInstance, VertexId};

fn blocks_of_size(b: &mut InstanceBuilder, n: usize, t: u64) -> Vec<VertexId> {
    let mut all = Vec::new();
    for _ in 0..n {
        let blk = b.add_block(None);
        all.extend(b.add_vertices(blk, t, None));
    }
    all
}

/// Graph on `n` blocks of size `t` with maximum degree at most `max_degree`.
/// Candidate cross-block pairs are visited in random order and kept while
/// both endpoints have room.
pub fn random_bounded_degree_graph(
    rng: &mut impl Rng,
    n: usize,
    t: u64,
    max_degree: usize,
) -> Result<PartitionedInstance> {
    let mut b = InstanceBuilder::new(2);
    let vertices = blocks_of_size(&mut b, n, t);
    let t = t as usize;
    let mut pairs: Vec<(usize, usize)> = (0..vertices.len())
        .flat_map(|x| (x + 1..vertices.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| x / t != y / t)
        .collect();
    pairs.shuffle(rng);
    let mut degree = vec![0usize; vertices.len()];
    for (x, y) in pairs {
        if degree[x] < max_degree && degree[y] < max_degree && rng.gen_bool(0.5) {
            degree[x] += 1;
            degree[y] += 1;
            b.add_edge(vec![vertices[x], vertices[y]]);
        }
    }
    b.finish()
}

/// Graph on `n` blocks of size `t` in which every block meets at most
/// `t * t / 4` edges, so that the block average degree is at most `t/4`.
pub fn random_low_block_degree_graph(rng: &mut impl Rng, n: usize, t: u64) -> Result<PartitionedInstance> {
    let mut b = InstanceBuilder::new(2);
    let vertices = blocks_of_size(&mut b, n, t);
    let t = t as usize;
    let cap = t * t / 4;
    let mut block_degree = vec![0usize; n];
    let attempts = n * cap;
    let mut seen = std::collections::HashSet::new();
    for _ in 0..attempts {
        let x = rng.gen_range(0..vertices.len());
        let y = rng.gen_range(0..vertices.len());
        let (bx, by) = (x / t, y / t);
        if bx == by || block_degree[bx] >= cap || block_degree[by] >= cap || !seen.insert((x.min(y), x.max(y))) {
            continue;
        }
        block_degree[bx] += 1;
        block_degree[by] += 1;
        b.add_edge(vec![vertices[x], vertices[y]]);
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn degree_caps_hold() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let g = random_bounded_degree_graph(&mut rng, 6, 6, 3).unwrap();
        assert!(g.max_degree() <= 3);
        assert_eq!(g.thickness(), 6);
        let h = random_low_block_degree_graph(&mut rng, 5, 4).unwrap();
        assert!(h.block_degrees().iter().all(|&d| d <= 4));
    }
}
