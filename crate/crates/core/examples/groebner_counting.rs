//! Gröbner bases and solution counts of zero-dimensional systems.

use semimixed::counting::{system_count, torus_count};
use semimixed::groebner::{buchberger, degrevlex_basis, quotient_dimension, Ideal};
use semimixed::{MonomialOrder, PolySystem, Polynomial, Result, Ring};

fn main() -> Result<()> {
    let ring = Ring::new(["x", "y"]);
    let ideal = Ideal::parse(&ring, &["x^2 + y^2 - 5", "x*y - 2"])?;

    let lex = buchberger(&ideal, &MonomialOrder::lex())?;
    println!("lex basis:");
    for g in lex.generators() {
        println!("  {g}");
    }
    let drl = degrevlex_basis(&ideal)?;
    println!("degrevlex basis has {} elements", drl.len());
    println!("quotient dimension: {}", quotient_dimension(&drl));

    // x*(y - 1) = y*(x - 2) = 0 has two solutions, one of them on a coordinate axis
    let polys = ["x*y - x", "x*y - 2*y"]
        .iter()
        .map(|s| Polynomial::parse(&ring, s))
        .collect::<Result<Vec<_>>>()?;
    let sys = PolySystem::new(&ring, polys)?;
    println!("affine solutions: {}", system_count(&sys)?);
    println!("torus solutions:  {}", torus_count(&sys)?);
    Ok(())
}
