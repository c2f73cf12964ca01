//! Harmonic Hermitian quadratics as moment maps: the exterior derivative
//! condition and the surface moment residuals of the Clifford torus link.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use slaglab::cones::clifford_surface;
use slaglab::symplectic::{
    fu_condition_residual, harmonic_basis, sl_moment_residuals, HermitianQuadratic,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let z = DVector::from_column_slice(&[
        Complex64::new(0.3, -0.1),
        Complex64::new(0.2, 0.5),
        Complex64::new(-0.4, 0.1),
    ]);
    let basis = harmonic_basis(n);
    let worst = basis
        .iter()
        .map(|(_, f)| fu_condition_residual(f, &z, 1e-3))
        .fold(0.0, f64::max);
    println!(
        "{} harmonic basis quadratics, worst residual {worst:.2e}",
        basis.len()
    );

    let mut a = DMatrix::zeros(n, n);
    a[(0, 0)] = Complex64::new(1.0, 0.0);
    let z1 = HermitianQuadratic::new(0.0, DVector::zeros(n), a)?;
    for h in [1e-2, 1e-3, 1e-4] {
        println!(
            "|z1|^2 residual at h = {h:e}: {:.6}",
            fu_condition_residual(&z1, &z, h)
        );
    }

    let surface = clifford_surface(n, 32, &DVector::zeros(n))?;
    for r in sl_moment_residuals(n, &surface)? {
        println!("  {:<10} {:+.2e}", r.label, r.value);
    }
    Ok(())
}
