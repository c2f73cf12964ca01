//! Advice on smoothing isolated conical singularities of exact Lagrangians.

use slaglab::intalg::{FgAbelianGroup, GroupHom};
use slaglab::obstruction::{desingularization_advisor, PbpInstance, SingularityModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cone = SingularityModel {
        label: "SL cone over T^2".into(),
        link: {
            let i1 = GroupHom::from_i64(
                FgAbelianGroup::free(1),
                FgAbelianGroup::free(2),
                &[vec![1], vec![0]],
            )?;
            PbpInstance::new(3, i1, vec![0, 0])
        },
        local_exact: true,
        local_maslov_zero: true,
        link_connected: true,
        is_sl: true,
    };
    let report = desingularization_advisor(std::slice::from_ref(&cone), 3)?;
    for (label, v) in &report.per_model {
        println!("{label}: {v}");
    }
    println!("aggregate: {:?}", report.aggregate);

    let twisted = SingularityModel {
        label: "Maslov-twisted link".into(),
        link: {
            let i1 = GroupHom::from_i64(
                FgAbelianGroup::free(1),
                FgAbelianGroup::free(2),
                &[vec![1], vec![0]],
            )?;
            PbpInstance::new(3, i1, vec![0, 1])
        },
        local_maslov_zero: false,
        ..cone.clone()
    };
    let report = desingularization_advisor(&[cone, twisted], 3)?;
    println!("with a twisted link: {:?}", report.aggregate);
    for note in report.notes {
        println!("note: {note}");
    }
    Ok(())
}
