//! Real orbits of `z -> alpha / (1 - z)`.
//!
//! The grade recurrence is a floored version of this map applied to `n_j/t`
//! with `alpha = 1/4 + delta`. For `alpha > 1/4` every real orbit reaches
//! `[1, inf)`, which is what makes the recurrence terminate; at `alpha = 1/4`
//! the orbit from 0 creeps towards the parabolic fixed point 1/2 instead.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, to_f64};

pub const CONVERGENCE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OrbitOutcome {
    /// `z_step >= 1`; the orbit left the domain of the recurrence.
    Escaped {
        step: usize,
    },
    /// Within tolerance of the attracting real fixed point.
    Converged {
        limit: f64,
    },
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MobiusOrbit {
    pub alpha: BigRational,
    pub start: BigRational,
    pub points: Vec<BigRational>,
    pub outcome: OrbitOutcome,
}

impl MobiusOrbit {
    /// Distance of each point to the attracting fixed point, if it is real.
    pub fn distances(&self) -> Option<Vec<f64>> {
        let z = attracting_fixed_point(&self.alpha)?;
        Some(self.points.iter().map(|p| (to_f64(p) - z).abs()).collect())
    }
}

/// Smaller root of `z^2 - z + alpha`, real when `alpha <= 1/4`.
pub fn attracting_fixed_point(alpha: &BigRational) -> Option<f64> {
    let disc = to_f64(&(BigRational::one() - int(4) * alpha));
    (disc >= 0.0).then(|| (1.0 - disc.sqrt()) / 2.0)
}

pub fn mobius_orbit(alpha: &BigRational, start: &BigRational, max_steps: usize) -> Result<MobiusOrbit> {
    if start.is_one() {
        return Err(Error::parameter("orbit start must differ from 1"));
    }
    let fixed = attracting_fixed_point(alpha);
    let mut points = vec![start.clone()];
    let mut outcome = OrbitOutcome::Undecided;
    let mut z = start.clone();
    for step in 0..=max_steps {
        if z >= BigRational::one() {
            outcome = OrbitOutcome::Escaped { step };
            break;
        }
        if let Some(limit) = fixed {
            if (to_f64(&z) - limit).abs() < CONVERGENCE_TOLERANCE {
                outcome = OrbitOutcome::Converged { limit };
                break;
            }
        }
        if step == max_steps {
            break;
        }
        let gap = BigRational::one() - &z;
        debug_assert!(!gap.is_zero());
        z = alpha / gap;
        points.push(z.clone());
    }
    Ok(MobiusOrbit {
        alpha: alpha.clone(),
        start: start.clone(),
        points,
        outcome,
    })
}
