//! Count lower bound for instances with few stretched edges per block.

use num_rational::BigRational;
use serde::Serialize;

use super::search::count_transversals;
use crate::instance::PartitionedInstance;
use crate::rational::{c_r, int, pow, ratio};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WwOutcome {
    HypothesisNotMet,
    BoundHolds {
        count: u128,
        #[serde(serialize_with = "ser")]
        bound: BigRational,
    },
    BoundViolated {
        count: u128,
        #[serde(serialize_with = "ser")]
        bound: BigRational,
    },
}

fn ser<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// With `t` the smallest block size, the hypothesis is that every block `B`
/// meets at most `c_r t^{r-1} |B|` stretched edges; the bound is
/// `((r-1) t / r)^n` independent transversals over `n` blocks.
pub fn check_ww_bound(inst: &PartitionedInstance) -> WwOutcome {
    let r = inst.uniformity();
    let t = inst.blocks().iter().map(|b| b.members.len() as u64).min().unwrap_or(0);
    let degrees = inst.block_degrees();
    let per_vertex = c_r(r) * pow(&int(t), r as u32 - 1);
    let met = inst
        .blocks()
        .iter()
        .all(|b| int(degrees[b.id.index()]) <= &per_vertex * int(b.members.len() as u64));
    if !met {
        return WwOutcome::HypothesisNotMet;
    }
    let bound = pow(&ratio((r as u64 - 1) * t, r as u64), inst.num_blocks() as u32);
    let count = count_transversals(inst, None).count().expect("uncapped count");
    if int(count) >= bound {
        WwOutcome::BoundHolds { count, bound }
    } else {
        WwOutcome::BoundViolated { count, bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_forest;
    use crate::instance::InstanceBuilder;
    use crate::sequences::simple_sequence;

    #[test]
    fn edgeless_meets_bound() {
        let mut b = InstanceBuilder::new(2);
        for _ in 0..3 {
            let blk = b.add_block(None);
            b.add_vertices(blk, 4, None);
        }
        let out = check_ww_bound(&b.finish().unwrap());
        assert_eq!(
            out,
            WwOutcome::BoundHolds {
                count: 64,
                bound: int(8)
            }
        );
    }

    #[test]
    fn builder_forest_is_outside_hypothesis() {
        let inst = build_forest(3, &simple_sequence(3).unwrap()).unwrap();
        assert_eq!(check_ww_bound(&inst), WwOutcome::HypothesisNotMet);
    }
}
