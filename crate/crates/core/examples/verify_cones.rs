//! Verifies every catalog cone and evaluates the moment maps of its symmetry algebra.

use slaglab::cones::{moment_level_check, translation_moment_check, verify_cone, ConeSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ids = [
        "su(3)",
        "su-so(3)",
        "su-sp(2)",
        "clifford(3)",
        "sw(1,1)",
        "sw(1,2)",
        "sw(2,3)",
    ];
    println!(
        "{:<12} {:>10} {:>10} {:>10} {:>10}  verdict",
        "cone", "sphere", "legendre", "isotropy", "phase sd"
    );
    for id in ids {
        let cone = ConeSpec::parse(id)?;
        let r = verify_cone(&cone, 200, 1e-9, 7)?;
        println!(
            "{:<12} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}  {}",
            id,
            r.sphere_residual,
            r.legendrian_residual,
            r.isotropy_residual,
            r.phase_stddev,
            r.verdict
        );
    }
    for id in ["su(3)", "su-so(3)", "su-sp(2)"] {
        let cone = ConeSpec::parse(id)?;
        let mu = moment_level_check(&cone, 100, 1)?;
        let tr = translation_moment_check(&cone, 100, 1)?;
        println!(
            "{id}: {} generators, max |mu| = {:.2e}; translations reach {:.2}",
            mu.generators.len(),
            mu.max_abs,
            tr.max_abs
        );
        if let Some(note) = cone.nonsmoothability_note() {
            println!("  note: {note}");
        }
    }
    Ok(())
}
