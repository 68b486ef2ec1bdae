//! Volumes and mixed volumes of lattice polytopes.

use semimixed::polytope::{
    minkowski_sum, mixed_volume, mv_with_multiplicity, newton_polytope, normalized_volume, LatticePolytope,
};
use semimixed::{Polynomial, Result, Ring};

fn main() -> Result<()> {
    let square = LatticePolytope::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])?;
    let triangle = LatticePolytope::new(2, vec![vec![0, 0], vec![2, 0], vec![0, 2]])?;
    println!(
        "normalized volume of the square:   {}",
        normalized_volume(&square)
    );
    println!(
        "normalized volume of the triangle: {}",
        normalized_volume(&triangle)
    );
    println!(
        "MV(square, triangle) = {}",
        mixed_volume(&[square.clone(), triangle.clone()])?
    );
    println!(
        "MV(triangle[2])      = {}",
        mv_with_multiplicity(std::slice::from_ref(&triangle), &[2])?
    );
    let sum = minkowski_sum(&[square, triangle])?;
    println!("Minkowski sum has {} vertices", sum.vertices().len());

    let ring = Ring::new(["u", "v"]);
    let f = Polynomial::parse(&ring, "u^3 + u*v^2 + u + v + 1")?;
    let g = Polynomial::parse(&ring, "u^2*v + v^3 + u + v + 1")?;
    let (p, q) = (newton_polytope(&f, &[])?, newton_polytope(&g, &[])?);
    println!("BKK bound of the cubic resonator: {}", mixed_volume(&[p, q])?);
    Ok(())
}
