//! Parsing, arithmetic and monomial orders on exact rational polynomials.

use semimixed::{MonomialOrder, Polynomial, Result, Ring};

fn main() -> Result<()> {
    let ring = Ring::new(["x", "y", "z"]);
    let f = Polynomial::parse(&ring, "x^2*y - 3/2*z + 1")?;
    let g = Polynomial::parse(&ring, "x*y^2 + z^3")?;

    println!("f       = {f}");
    println!("g       = {g}");
    println!("f + g   = {}", &f + &g);
    println!("f * g   = {}", &f * &g);
    println!("f^3 has {} terms", f.pow(3).num_terms());

    let h = Polynomial::parse(&ring, "x*z^3 + y^4 + x^2*y")?;
    for name in ["lex", "deglex", "degrevlex"] {
        let ord = MonomialOrder::from_name(name)?;
        let (c, m) = h.leading_term(&ord)?;
        println!("{name:>9}: leading term {c} * {:?}", m.exponents());
    }
    Ok(())
}
