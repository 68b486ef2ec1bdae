//! Certifying and refuting Khovanskii bases by subduction.

use semimixed::fixtures;
use semimixed::khovanskii::{is_khovanskii, subduct, BlockFamily};
use semimixed::{MonomialOrder, Polynomial, Result};

fn main() -> Result<()> {
    let ord = MonomialOrder::deglex();

    // the unmixed family {1, x, y, x^3 + x y^2, x^2 y + y^3}
    let unmixed = BlockFamily::parse(
        &["x", "y"],
        &[&["1", "x", "y", "x^3 + x*y^2", "x^2*y + y^3"]],
        &[2],
    )?;
    let cert = is_khovanskii(&unmixed, &ord)?;
    println!("unmixed: {}", cert.verdict);

    // the same polynomials split into two blocks fail
    let cert = is_khovanskii(&fixtures::ex213_semimixed()?, &ord)?;
    println!("semimixed: {}", cert.verdict);
    if let Some(note) = &cert.note {
        println!("  {note}");
    }

    // subduction of a product of generators terminates at zero
    let scaled = unmixed.scaled(&ord)?;
    let ring = scaled.ring().clone();
    let f = Polynomial::parse(&ring, "s^2*x^4 + s^2*x^2*y^2")?;
    let sub = subduct(&f, &scaled)?;
    println!(
        "subduct {f}: {} steps, remainder {}",
        sub.steps.len(),
        sub.remainder
    );
    Ok(())
}
