//! Decides the prescribed boundary problem for the bundled instance files
//! and a few instances built in code.

use slaglab::intalg::{FgAbelianGroup, GroupHom};
use slaglab::obstruction::{
    count_extensions, decide_disk, decide_pbp, parse_instance, validate_instance, PbpInstance,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .collect();
    files.sort();
    for path in files {
        let inst = parse_instance(&std::fs::read_to_string(&path)?)?;
        println!(
            "{}: {}",
            path.file_name().unwrap_or_default().to_string_lossy(),
            decide_pbp(&inst)?
        );
        for msg in validate_instance(&inst) {
            println!("  {msg}");
        }
    }

    for n in 2..=7 {
        println!("disk D^{n}: {}", decide_disk(n)?);
    }
    for mu in -2..=2 {
        println!(
            "D^2 with Maslov class {mu}: {}",
            decide_pbp(&PbpInstance::disk(2, mu))?
        );
    }

    // Solid torus in C^3 bounded by T^2: H^1(L) = Z -> H^1(T^2) = Z^2.
    let i1 = GroupHom::from_i64(
        FgAbelianGroup::free(1),
        FgAbelianGroup::free(2),
        &[vec![1], vec![0]],
    )?;
    let mut inst = PbpInstance::new(3, i1, vec![3, 0]);
    inst.h1_rel = Some(FgAbelianGroup::free(1));
    println!(
        "solid torus: {}; solutions parameterized by {}",
        decide_pbp(&inst)?,
        count_extensions(&inst)?
    );
    Ok(())
}
