//! Harmonic-balance systems of driven nonlinear resonators.

use semimixed::polyring::{rat, ratio};
use semimixed::resonator::{
    fourier_coefficient, fourier_quadrature_check, lower_bound_system, HBConfig, LowerBoundKind,
};
use semimixed::Result;

fn main() -> Result<()> {
    let (sys, coeffs) = HBConfig::single(2, 42).generate()?;
    println!("single cubic resonator, seed 42:\n{sys}");
    println!(
        "coefficient map: {}",
        serde_json::to_string(&coeffs).expect("json")
    );

    let (sys, _) = HBConfig::coupled(2, 2, 42).generate()?;
    println!(
        "two coupled resonators: {} equations in {} unknowns",
        sys.len(),
        sys.ring().nvars()
    );

    for k in 0..4 {
        let q = fourier_quadrature_check(k, (rat(1), ratio(1, 2)), 64)?;
        println!(
            "k={k}: F_k = {}, quadrature deviation {:.1e}",
            fourier_coefficient(k),
            q.deviation
        );
    }

    let sys = lower_bound_system(LowerBoundKind::Single(2), &rat(3))?;
    println!("specialized system:\n{sys}");
    Ok(())
}
