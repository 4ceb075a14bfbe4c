// Orbits of `z -> alpha / (1 - z)` from 0 on either side of `alpha = 1/4`.

use indtrans::error::Result;
use indtrans::mobius::{mobius_orbit, OrbitOutcome, DEFAULT_MAX_STEPS};
use indtrans::rational::ratio;
use num_traits::Zero;

pub fn run_example() -> Result<()> {
    let zero = num_rational::BigRational::zero();
    for (num, den) in [(1, 5), (1, 4), (251, 1000), (26, 100), (1, 2)] {
        let alpha = ratio(num, den);
        let orbit = mobius_orbit(&alpha, &zero, DEFAULT_MAX_STEPS)?;
        let summary = match orbit.outcome {
            OrbitOutcome::Escaped { step } => format!("escapes at step {step}"),
            OrbitOutcome::Converged { limit } => format!("converges to {limit:.6}"),
            OrbitOutcome::Undecided => {
                let last = orbit.points.last().expect("orbit has a start");
                format!(
                    "undecided after {} steps, z = {:.6}",
                    orbit.points.len() - 1,
                    indtrans::rational::to_f64(last)
                )
            }
        };
        println!("alpha = {alpha}: {summary}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
