mod common;

use semimixed::counting::{
    bkk_bound, coupled_family, generic_count, generic_system, khovanskii_bound, multifreq_family,
    oscillator_family, system_count, torus_count,
};
use semimixed::fixtures;
use semimixed::groebner::Count;
use semimixed::khovanskii::{BlockFamily, Verdict};
use semimixed::polytope::mixed_volume;
use semimixed::resonator::HBConfig;
use semimixed::{MonomialOrder, PolySystem, Polynomial, Ring};

fn system(vars: &[&str], eqs: &[&str]) -> PolySystem {
    let ring = Ring::new(vars.iter().copied());
    let eqs = eqs.iter().map(|e| Polynomial::parse(&ring, e).unwrap()).collect();
    PolySystem::new(&ring, eqs).unwrap()
}

#[test]
fn bkk_examples() {
    assert_eq!(
        bkk_bound(&system(&["x", "y"], &["2*x + 3*y - 1", "x - 5*y + 7"])).unwrap(),
        1
    );
    let (sys, _) = HBConfig::single(2, 4).generate().unwrap();
    assert_eq!(bkk_bound(&sys).unwrap(), 9);
    let (sys, _) = HBConfig::multifreq(2, 4).generate().unwrap();
    let structured = mixed_volume(&fixtures::sec62_polytopes().unwrap()).unwrap();
    assert!(bkk_bound(&sys).unwrap() >= structured);
}

#[test]
fn khovanskii_bounds() {
    let ord = MonomialOrder::deglex();
    for n in 2..=4 {
        let b = khovanskii_bound(&oscillator_family(n).unwrap(), &ord, None).unwrap();
        assert_eq!(b.bound, Some(4 * n as u128 - 3));
    }
    let b = khovanskii_bound(&multifreq_family(2).unwrap(), &ord, None).unwrap();
    assert_eq!((b.bound, b.verdict), (Some(25), Verdict::Certified));

    let unmixed = multifreq_family(2).unwrap().unmixed("s").unwrap();
    let b = khovanskii_bound(&unmixed, &ord, None).unwrap();
    assert_eq!((b.bound, b.verdict), (Some(33), Verdict::Certified));

    let b = khovanskii_bound(&fixtures::ex211_family().unwrap(), &ord, None).unwrap();
    assert_eq!((b.bound, b.verdict), (None, Verdict::Refuted));
}

#[test]
fn generic_counts() {
    assert_eq!(
        generic_count(&oscillator_family(2).unwrap(), 0).unwrap(),
        Count::Finite(5)
    );
    assert_eq!(
        generic_count(&fixtures::ex211_family().unwrap(), 0).unwrap(),
        Count::Finite(6)
    );
    assert_eq!(
        generic_count(&multifreq_family(2).unwrap(), 0).unwrap(),
        Count::Finite(25)
    );
    let (fam, _) = coupled_family(2, 2).unwrap();
    assert_eq!(generic_count(&fam, 0).unwrap(), Count::Finite(25));
}

#[test]
fn torus_counts() {
    let lead = BlockFamily::parse(&["x", "y"], &[&["x^2", "x*y", "y^2", "y^3"]], &[2]).unwrap();
    assert_eq!(
        torus_count(&generic_system(&lead, 0).unwrap()).unwrap(),
        Count::Finite(2)
    );

    // dense cubics in two variables meet in 9 points of the torus
    let dense = BlockFamily::parse(
        &["x", "y"],
        &[&["1", "x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"]],
        &[2],
    )
    .unwrap();
    let sys = generic_system(&dense, 5).unwrap();
    assert_eq!(torus_count(&sys).unwrap(), Count::Finite(9));
    assert_eq!(bkk_bound(&sys).unwrap(), 9);

    assert_eq!(
        torus_count(&system(&["x", "y"], &["x", "y"])).unwrap(),
        Count::Finite(0)
    );
}

#[test]
fn system_counts() {
    assert_eq!(
        system_count(&system(&["x", "y"], &["x^2 - 1", "y^3 - 2"])).unwrap(),
        Count::Finite(6)
    );
    assert_eq!(
        system_count(&system(&["x", "y"], &["x*y"])).unwrap(),
        Count::Infinite
    );
}

#[test]
fn hilbert_functions_agree_on_certified_families() {
    common::prop_hilbert(common::CASES).unwrap();
}

#[test]
fn hilbert_function_inequality() {
    common::prop_hilbert_random(common::CASES).unwrap();
}

#[test]
fn counts_do_not_depend_on_the_seed() {
    common::prop_seed_agreement(common::CASES).unwrap();
}

#[test]
fn orders_are_well_behaved() {
    common::prop_orders(common::CASES).unwrap();
}
