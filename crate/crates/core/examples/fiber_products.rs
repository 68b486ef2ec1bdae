//! Toric ideals of fiber products assembled from their factors.

use semimixed::groebner::ideals_equal;
use semimixed::toric::{fiber_product_generators, toric_ideal, Factor, MonomialMap};
use semimixed::{MonomialOrder, Result};

fn main() -> Result<()> {
    let ord = MonomialOrder::degrevlex();
    // (s, x) -> (s, s x, s x^2) and (t, y) -> (t, t y, t y^3)
    let a = MonomialMap::with_targets(
        vec!["s", "x"],
        vec!["z0", "z1", "z2"],
        vec![vec![1, 1, 1], vec![0, 1, 2]],
    )?
    .with_homogenizing(&["s"])?;
    let b = MonomialMap::with_targets(
        vec!["t", "y"],
        vec!["w0", "w1", "w2"],
        vec![vec![1, 1, 1], vec![0, 1, 3]],
    )?
    .with_homogenizing(&["t"])?;
    let ia = toric_ideal(&a, &ord)?.to_ideal();
    let ib = toric_ideal(&b, &ord)?.to_ideal();
    let joined = fiber_product_generators(&[
        Factor {
            ideal: &ia,
            homogenizing: "z0",
        },
        Factor {
            ideal: &ib,
            homogenizing: "w0",
        },
    ])?;
    println!("fiber product generators:");
    for g in joined.generators() {
        println!("  {g}");
    }

    // the same ideal computed directly from (s, x, y) -> (s, s x, s x^2, s y, s y^3)
    let direct = MonomialMap::with_targets(
        vec!["s", "x", "y"],
        vec!["z0", "z1", "z2", "w1", "w2"],
        vec![vec![1, 1, 1, 1, 1], vec![0, 1, 2, 0, 0], vec![0, 0, 0, 1, 3]],
    )?;
    let direct = toric_ideal(&direct, &ord)?.to_ideal();
    println!(
        "matches the direct computation: {}",
        ideals_equal(&joined, &direct, &ord)?
    );
    Ok(())
}
