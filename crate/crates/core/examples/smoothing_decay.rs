//! Two-ended smoothings of the Clifford cones: decay rate and phase constancy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slaglab::cones::{decay_rate_fit, smoothing_frame, Branch, ConeSpec, SmoothingFamily};
use slaglab::symplectic::phase;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let radii: Vec<f64> = (0..9)
        .map(|k| 10f64.powf(1.0 + f64::from(k) / 4.0))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [2, 3] {
        let cone = ConeSpec::clifford(n)?;
        let family = SmoothingFamily::new(cone, 1.0)?;
        let sigma = cone.random_parameter(&mut rng);
        let fit = decay_rate_fit(&family, &radii, &sigma)?;
        println!("{cone}: slope {:.4} (expected {})", fit.slope, fit.expected);
        for (r, d) in fit.points.iter().step_by(4) {
            println!("  r = {r:>8.1}  dist = {d:.3e}");
        }
        let phases: Vec<_> = radii
            .iter()
            .flat_map(|&r| [Branch::NearZero, Branch::NearPiOverN].map(move |b| (r, b)))
            .map(|(r, b)| {
                phase(&smoothing_frame(
                    &family,
                    r,
                    b,
                    &cone.random_parameter(&mut rng),
                )?)
                .map_err(Into::into)
            })
            .collect::<Result<_, Box<dyn std::error::Error>>>()?;
        let spread = phases
            .iter()
            .map(|w| (w - phases[0]).norm())
            .fold(0.0, f64::max);
        println!("  phase spread over {} frames: {spread:.2e}", phases.len());
    }
    Ok(())
}
