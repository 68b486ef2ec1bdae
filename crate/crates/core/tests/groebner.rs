use std::sync::Arc;

use proptest::prelude::*;
use semimixed::counting::{generic_system, oscillator_family};
use semimixed::fixtures;
use semimixed::groebner::{
    buchberger, degrevlex_basis, eliminate, ideals_equal, is_groebner, quotient_dimension, reduce_by,
    saturate, Count, Ideal,
};
use semimixed::polyring::ratio;
use semimixed::{Monomial, MonomialOrder, Polynomial, Ring};

fn ideal(ring: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::parse(ring, gens).unwrap()
}

fn lemma53_n2() -> (Arc<Ring>, Vec<Polynomial>) {
    let ring = Ring::new(["z0", "z1", "z2", "z3", "z4"]);
    let gens = ideal(&ring, &["z0^2*z3 - z1^3", "z0^2*z4 - z1^2*z2", "z1*z4 - z2*z3"]);
    (ring, gens.generators().to_vec())
}

#[test]
fn basis_of_a_principal_ideal() {
    let ring = Ring::new(["x", "y"]);
    let gb = buchberger(&ideal(&ring, &["3*x"]), &MonomialOrder::lex()).unwrap();
    assert_eq!(gb.generators(), &[Polynomial::parse(&ring, "x").unwrap()]);
}

#[test]
fn trapezoid_binomials_are_a_basis() {
    let (_, gens) = lemma53_n2();
    assert!(is_groebner(&gens, &MonomialOrder::deglex()).unwrap());
}

#[test]
fn union_example() {
    let Ok(fixtures::FixtureData::GroebnerUnion {
        order,
        first,
        second,
        witness,
    }) = fixtures::ex36_data()
    else {
        panic!("fixture shape");
    };
    assert!(is_groebner(&first, &order).unwrap());
    assert!(is_groebner(&second, &order).unwrap());
    let union: Vec<Polynomial> = first.iter().chain(&second).cloned().collect();
    assert!(!reduce_by(&witness, &union, &order).unwrap().is_zero());
    for g in &union {
        assert!(reduce_by(g, &union, &order).unwrap().is_zero());
    }
    let gb = buchberger(&Ideal::new(witness.ring(), union).unwrap(), &order).unwrap();
    assert!(gb.normal_form(&witness).unwrap().is_zero());
}

#[test]
fn quotient_dimensions() {
    let ring = Ring::new(["x", "y"]);
    let gb = buchberger(&ideal(&ring, &["x", "y"]), &MonomialOrder::degrevlex()).unwrap();
    assert_eq!(quotient_dimension(&gb), Count::Finite(1));

    let fam = fixtures::ex211_family().unwrap();
    let sys = generic_system(&fam, 11).unwrap();
    let gb = degrevlex_basis(&Ideal::new(sys.ring(), sys.equations().to_vec()).unwrap()).unwrap();
    assert_eq!(quotient_dimension(&gb), Count::Finite(6));

    let sys = generic_system(&oscillator_family(2).unwrap(), 3).unwrap();
    let gb = degrevlex_basis(&Ideal::new(sys.ring(), sys.equations().to_vec()).unwrap()).unwrap();
    assert_eq!(quotient_dimension(&gb), Count::Finite(5));

    let gb = buchberger(&ideal(&ring, &["x*y"]), &MonomialOrder::degrevlex()).unwrap();
    assert_eq!(quotient_dimension(&gb), Count::Infinite);
}

#[test]
fn elimination_examples() {
    let ring = Ring::new(["t", "x"]);
    assert!(eliminate(&ideal(&ring, &["t*x - 1"]), &["t"]).unwrap().is_zero());

    let big = Ring::new(["s", "u", "v", "z0", "z1", "z2", "z3", "z4"]);
    let graph = ideal(
        &big,
        &["z0 - s", "z1 - s*u", "z2 - s*v", "z3 - s*u^3", "z4 - s*v*u^2"],
    );
    let elim = eliminate(&graph, &["s", "u", "v"]).unwrap();
    let (zr, gens) = lemma53_n2();
    let listed = Ideal::new(&zr, gens).unwrap();
    let elim = Ideal::new(
        &zr,
        elim.generators().iter().map(|g| g.embed(&zr).unwrap()).collect(),
    )
    .unwrap();
    assert!(ideals_equal(&elim, &listed, &MonomialOrder::degrevlex()).unwrap());

    let i = ideal(&ring, &["t^2 - x"]);
    let same = eliminate(&i, &[]).unwrap();
    assert!(ideals_equal(&same, &i, &MonomialOrder::lex()).unwrap());
}

#[test]
fn saturation_examples() {
    let ring = Ring::new(["x", "y"]);
    let x = Monomial::new(vec![1, 0]);
    let sat = saturate(&ideal(&ring, &["x*y"]), &x).unwrap();
    assert!(ideals_equal(&sat, &ideal(&ring, &["y"]), &MonomialOrder::lex()).unwrap());

    let sat = saturate(&ideal(&ring, &["x - 1"]), &x).unwrap();
    assert!(ideals_equal(&sat, &ideal(&ring, &["x - 1"]), &MonomialOrder::lex()).unwrap());

    // two general combinations of x^2, xy, y^2, y^3 have two solutions in the torus
    let eqs = ideal(
        &ring,
        &["3*x^2 - 5*x*y + 7*y^2 + 2*y^3", "-4*x^2 + x*y + 6*y^2 - 9*y^3"],
    );
    let sat = saturate(&eqs, &Monomial::new(vec![1, 1])).unwrap();
    let gb = buchberger(&sat, &MonomialOrder::degrevlex()).unwrap();
    assert_eq!(quotient_dimension(&gb), Count::Finite(2));
}

type Terms = Vec<((u32, u32, u32), i64)>;

fn random_poly(terms: Terms) -> Polynomial {
    let ring = Ring::new(["x", "y", "z"]);
    Polynomial::from_terms(
        &ring,
        terms
            .into_iter()
            .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), ratio(k, 1))),
    )
}

fn generators() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(
        prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -4i64..=4), 1..=3),
        1..=3,
    )
}

fn multipliers() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(
        prop::collection::vec(((0u32..=1, 0u32..=1, 0u32..=1), -3i64..=3), 0..=2),
        3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Combinations of the generators reduce to zero, and the result is a basis.
    #[test]
    fn membership_is_sound(gens in generators(), mult in multipliers()) {
        let polys: Vec<Polynomial> = gens.into_iter().map(random_poly).collect();
        prop_assume!(polys.iter().any(|p| !p.is_zero()));
        let ring = polys[0].ring().clone();
        let ord = MonomialOrder::degrevlex();
        let gb = buchberger(&Ideal::new(&ring, polys.clone()).unwrap(), &ord).unwrap();
        prop_assert!(is_groebner(gb.generators(), &ord).unwrap());
        let mut f = Polynomial::zero(&ring);
        for (g, m) in polys.iter().zip(mult) {
            f = &f + &(g * &random_poly(m));
        }
        prop_assert!(gb.contains(&f).unwrap());
        for g in &polys {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    /// The homogenized route and plain Buchberger agree.
    #[test]
    fn degrevlex_routes_agree(gens in generators()) {
        let polys: Vec<Polynomial> = gens.into_iter().map(random_poly).collect();
        prop_assume!(polys.iter().any(|p| !p.is_zero()));
        let ring = polys[0].ring().clone();
        let i = Ideal::new(&ring, polys).unwrap();
        let a = degrevlex_basis(&i).unwrap();
        let b = buchberger(&i, &MonomialOrder::degrevlex()).unwrap();
        prop_assert_eq!(a.generators(), b.generators());
    }

    /// The quotient dimension does not depend on the graded order.
    #[test]
    fn quotient_dimension_is_order_free(gens in generators()) {
        let polys: Vec<Polynomial> = gens.into_iter().map(random_poly).collect();
        prop_assume!(polys.iter().any(|p| !p.is_zero()));
        let ring = polys[0].ring().clone();
        let i = Ideal::new(&ring, polys).unwrap();
        let a = quotient_dimension(&buchberger(&i, &MonomialOrder::deglex()).unwrap());
        let b = quotient_dimension(&buchberger(&i, &MonomialOrder::degrevlex()).unwrap());
        prop_assert_eq!(a, b);
    }
}
