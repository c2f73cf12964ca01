//! Deforms a random invertible complex matrix onto its unitary polar factor
//! and checks the retraction properties along the way.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slaglab::cxmat::ComplexSquareMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 3;
    let m = ComplexSquareMatrix::new(DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }))?;
    let polar = m.polar_decompose()?;
    println!("det M = {:.6}", m.determinant());
    println!(
        "|P U - M| = {:.2e}",
        (&polar.positive * &polar.unitary).max_abs_diff(&m)
    );

    println!("{:>5}  {:>12}  {:>12}", "t", "|rho_t - M|", "unitarity");
    for k in 0..=5 {
        let t = f64::from(k) / 5.0;
        let r = m.polar_retract(t)?;
        println!(
            "{t:>5.2}  {:>12.3e}  {:>12.3e}",
            r.max_abs_diff(&m),
            r.unitarity_defect()
        );
    }

    // Equivariance: rho_1(U M V) = U rho_1(M) V for unitary U, V.
    let u = ComplexSquareMatrix::from_diagonal(&[
        Complex64::from_polar(1.0, 0.3),
        Complex64::i(),
        Complex64::new(1.0, 0.0),
    ])?;
    let lhs = (&(&u * &m) * &u.adjoint()).polar_retract(1.0)?;
    let rhs = &(&u * &m.polar_retract(1.0)?) * &u.adjoint();
    println!("equivariance defect = {:.2e}", lhs.max_abs_diff(&rhs));
    Ok(())
}
