//! Maslov indices of the Schoen–Wolfson link loops, and exactness of the
//! loops against the non-exact unit circle.

use nalgebra::DVector;
use num_complex::Complex64;
use num_integer::Integer;
use slaglab::cones::{link_loop, ConeSpec, LinkParameter};
use slaglab::symplectic::{
    curve_liouville_integral, loop_liouville_integral, maslov_index_adaptive, MAX_LOOP_SAMPLES,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>3} {:>3} {:>7} {:>8} {:>12}",
        "p", "q", "maslov", "samples", "int lambda"
    );
    for s in 2..=12u32 {
        for p in 1..s {
            let q = s - p;
            if p.gcd(&q) != 1 {
                continue;
            }
            let cone = ConeSpec::schoen_wolfson(p, q)?;
            let base = LinkParameter::Angles(vec![0.0]);
            let (mu, m) = maslov_index_adaptive(256, MAX_LOOP_SAMPLES, |m| {
                link_loop(&cone, &base, m)
                    .map_err(|_| slaglab::symplectic::SymplecticError::NotClosed { gap: f64::NAN })
            })?;
            let integral = loop_liouville_integral(link_loop(&cone, &base, 256)?.points())?;
            println!("{p:>3} {q:>3} {mu:>7} {m:>8} {:>12.2e}", integral.value);
        }
    }
    let circle = curve_liouville_integral(256, |t| {
        DVector::from_column_slice(&[Complex64::from_polar(1.0, t), Complex64::new(0.0, 0.0)])
    })?;
    println!("circle: {:.12} (exact: {})", circle.value, circle.exact);
    Ok(())
}
