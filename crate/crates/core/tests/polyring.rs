use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use semimixed::polyring::{compare, rat};
use semimixed::{Monomial, MonomialOrder, Polynomial, Ring};

fn uv() -> Arc<Ring> {
    Ring::new(["u", "v"])
}

fn p(ring: &Arc<Ring>, text: &str) -> Polynomial {
    Polynomial::parse(ring, text).unwrap()
}

#[test]
fn leading_terms() {
    let ring = uv();
    let (c, m) = p(&ring, "u*(u^2+v^2)^2")
        .leading_term(&MonomialOrder::deglex())
        .unwrap();
    assert_eq!((c, m), (rat(1), Monomial::new(vec![5, 0])));

    let (c, m) = p(&ring, "7").leading_term(&MonomialOrder::deglex()).unwrap();
    assert_eq!((c, m), (rat(7), Monomial::one(2)));

    let xy = Ring::new(["x", "y"]);
    let (_, m) = p(&xy, "x^2*y + x*y^2")
        .leading_term(&MonomialOrder::degrevlex())
        .unwrap();
    assert_eq!(m, Monomial::new(vec![2, 1]));
}

#[test]
fn zero_has_no_leading_term() {
    assert!(Polynomial::zero(&uv())
        .leading_term(&MonomialOrder::lex())
        .is_err());
}

#[test]
fn compare_examples() {
    // z0 is the smallest variable under degrevlex
    let (z0, z1) = (Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1]));
    let rev = MonomialOrder::degrevlex().with_priority(vec![1, 0]);
    assert_eq!(compare(&z1, &z0, &rev).unwrap(), Ordering::Greater);
    assert_eq!(compare(&z1, &z1, &rev).unwrap(), Ordering::Equal);

    // s u^3 against s v u^2 over (s, u, v)
    let a = Monomial::new(vec![1, 3, 0]);
    let b = Monomial::new(vec![1, 2, 1]);
    assert_eq!(
        compare(&a, &b, &MonomialOrder::deglex()).unwrap(),
        Ordering::Greater
    );
}

#[test]
fn substitution_examples() {
    let z = Ring::new(["z0", "z1", "z2", "z3", "z4"]);
    let suv = Ring::new(["s", "u", "v"]);
    let images: HashMap<String, Polynomial> = [
        ("z0", "s"),
        ("z1", "s*u"),
        ("z2", "s*v"),
        ("z3", "s*u*(u^2+v^2)"),
        ("z4", "s*v*(u^2+v^2)"),
    ]
    .into_iter()
    .map(|(k, t)| (k.to_string(), p(&suv, t)))
    .collect();
    let g4 = p(&z, "z0^2*z4 - z1^2*z2");
    assert_eq!(g4.substitute(&images, &suv).unwrap(), p(&suv, "s^3*v^3"));
    let f14 = p(&z, "z1*z4 - z2*z3");
    assert!(f14.substitute(&images, &suv).unwrap().is_zero());

    let identity: HashMap<String, Polynomial> = z
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), Polynomial::var(&z, i)))
        .collect();
    assert_eq!(g4.substitute(&identity, &z).unwrap(), g4);
}

#[test]
fn unbound_variable_is_an_error() {
    let ring = uv();
    let images: HashMap<String, Polynomial> = [("u".to_string(), p(&ring, "v"))].into();
    assert!(p(&ring, "u + v").substitute(&images, &ring).is_err());
}

#[test]
fn parse_errors() {
    let ring = uv();
    for bad in ["u +", "w", "u^", "2**u", "(u"] {
        assert!(Polynomial::parse(&ring, bad).is_err(), "{bad}");
    }
}

#[test]
fn rational_coefficients() {
    let ring = uv();
    assert_eq!(p(&ring, "1/2*u + u/2"), p(&ring, "u"));
    assert_eq!(
        p(&ring, "3/4*u").coefficient(&Monomial::new(vec![1, 0])),
        semimixed::polyring::ratio(3, 4)
    );
}

fn small_poly() -> impl Strategy<Value = Vec<((u32, u32, u32), i64, i64)>> {
    prop::collection::vec(((0u32..=3, 0u32..=3, 0u32..=3), -9i64..=9, 1i64..=4), 0..=5)
}

fn build(ring: &Arc<Ring>, terms: &[((u32, u32, u32), i64, i64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|&((a, b, c), n, d)| (Monomial::new(vec![a, b, c]), semimixed::polyring::ratio(n, d))),
    )
}

fn xyz() -> Arc<Ring> {
    Ring::new(["x", "y", "z"])
}

fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::lex()),
        Just(MonomialOrder::deglex()),
        Just(MonomialOrder::degrevlex()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        let ring = xyz();
        let (a, b, c) = (build(&ring, &a), build(&ring, &b), build(&ring, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&ring), a.clone());
    }

    #[test]
    fn leading_term_is_multiplicative(a in small_poly(), b in small_poly(), ord in order_strategy()) {
        let ring = xyz();
        let (a, b) = (build(&ring, &a), build(&ring, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (ca, ma) = a.leading_term(&ord).unwrap();
        let (cb, mb) = b.leading_term(&ord).unwrap();
        let (c, m) = (&a * &b).leading_term(&ord).unwrap();
        prop_assert_eq!(m, ma.mul(&mb));
        prop_assert_eq!(c, ca * cb);
    }

    #[test]
    fn text_round_trip(a in small_poly()) {
        let ring = xyz();
        let a = build(&ring, &a);
        prop_assert_eq!(Polynomial::parse(&ring, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn json_round_trip(a in small_poly()) {
        let ring = xyz();
        let a = build(&ring, &a);
        prop_assert_eq!(Polynomial::from_json_in(&ring, &a.to_json()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), pt in prop::collection::vec(-3i64..=3, 3)) {
        let ring = xyz();
        let (a, b) = (build(&ring, &a), build(&ring, &b));
        let pt: Vec<_> = pt.into_iter().map(rat).collect();
        let ev = |q: &Polynomial| q.evaluate(&pt).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }
}
