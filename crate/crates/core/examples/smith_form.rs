//! Smith normal form, abelian group arithmetic and exact image membership.

use slaglab::intalg::{smith_normal_form, FgAbelianGroup, GroupHom, IntegerMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntegerMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3)
        .ok_or("ragged rows")?;
    let snf = smith_normal_form(&a);
    let factors: Vec<String> = snf
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("invariant factors: {}", factors.join(", "));
    println!(
        "U A V is diagonal: {}",
        snf.u.mul(&a).mul(&snf.v).is_diagonal()
    );

    let g = FgAbelianGroup::from_orders(1, &[4, 6])?;
    println!("Z/4 + Z/6 + Z = {g}");

    // Z -> Z/6 + Z^2, 1 -> (1, 2, 0)
    let h = GroupHom::from_i64(
        FgAbelianGroup::free(1),
        FgAbelianGroup::new(2, vec![6])?,
        &[vec![1], vec![2], vec![0]],
    )?;
    for y in [[5, 10, 0], [3, 6, 0], [1, 2, 1], [7, 2, 0]] {
        match h.preimage(&y)? {
            Some(x) => println!("{y:?} = h({})", x[0]),
            None => println!("{y:?} is not in the image"),
        }
    }
    println!("cokernel = {}", h.cokernel()?);
    Ok(())
}
