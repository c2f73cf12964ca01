//! Necessary conditions for Lagrangian immersions and embeddings of real
//! projective spaces: `w(TL)^2 = 1` fails unless `n + 1` is a power of two.

use slaglab::charclass::{
    euler_embedding_obstruction, lagrangian_immersion_obstructions, parse_manifold_expr,
    ImmersionVerdict,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=16 {
        let e = parse_manifold_expr(&format!("RP({n})"))?;
        let report = lagrangian_immersion_obstructions(&e);
        let chi = euler_embedding_obstruction(&e).chi;
        let verdict = match report.verdict {
            ImmersionVerdict::Obstructed(_) => "obstructed",
            ImmersionVerdict::NecessaryConditionsPass => "passes",
            ImmersionVerdict::Inconclusive(_) => "inconclusive",
        };
        println!(
            "RP({n:>2})  w^2 = 1: {:<5}  immersion: {verdict:<10}  chi = {chi}",
            format!("{:?}", report.sw_square_ok)
        );
    }
    Ok(())
}
