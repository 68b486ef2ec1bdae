//! Toric ideals of monomial maps and their lattice index.

use semimixed::toric::{lattice_index, toric_ideal, trapezoid_map, MonomialMap};
use semimixed::{MonomialOrder, Result};

fn main() -> Result<()> {
    // twisted cubic: (s, t) -> (s^3, s^2 t, s t^2, t^3)
    let cubic = MonomialMap::new(vec!["s", "t"], vec![vec![3, 2, 1, 0], vec![0, 1, 2, 3]])?;
    let gb = toric_ideal(&cubic, &MonomialOrder::degrevlex())?;
    println!("twisted cubic:");
    for g in gb.generators() {
        println!("  {g}");
    }

    for n in 2..=4 {
        let map = trapezoid_map(n)?;
        let gb = toric_ideal(&map, &MonomialOrder::degrevlex())?;
        println!(
            "trapezoid n={n}: {} generators, lattice index {}",
            gb.len(),
            lattice_index(&map)
        );
    }

    // exponent differences of (s, s x^2, s x^4) span 2Z
    let sparse = MonomialMap::with_targets(
        vec!["s", "x"],
        vec!["z0", "z1", "z2"],
        vec![vec![1, 1, 1], vec![0, 2, 4]],
    )?
    .with_homogenizing(&["s"])?;
    println!("index of (s, s x^2, s x^4): {}", lattice_index(&sparse));
    Ok(())
}
