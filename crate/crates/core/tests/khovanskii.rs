use proptest::prelude::*;
use semimixed::counting::{coupled_family, khovanskii_bound, oscillator_family};
use semimixed::fixtures;
use semimixed::khovanskii::{
    decoupled_check, is_khovanskii, monomial_decompose, subduct, verify_subduction, BlockFamily, Verdict,
};
use semimixed::polyring::rat;
use semimixed::{Monomial, MonomialOrder, Polynomial};

fn m(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

#[test]
fn one_step_subduction_of_g4() {
    let g = oscillator_family(2)
        .unwrap()
        .scaled(&MonomialOrder::deglex())
        .unwrap();
    let ring = g.ring().clone();
    let f = Polynomial::parse(&ring, "s^3*v^3").unwrap();
    let s = subduct(&f, &g).unwrap();
    assert!(s.is_zero());
    assert_eq!(s.steps.len(), 1);
    // the only way to reach s^3 v^3 is (s v)^3
    let mut e = vec![0u32; ring.nvars()];
    e[ring.index_of("s").unwrap()] = 1;
    e[ring.index_of("v").unwrap()] = 1;
    let sv = g
        .leading_monomials()
        .iter()
        .position(|l| *l == Monomial::new(e.clone()))
        .expect("s v is a leading monomial");
    assert_eq!(s.steps[0].alpha[sv], 3);
    assert!(verify_subduction(&f, &g, &s).unwrap());
}

#[test]
fn constant_is_its_own_remainder() {
    let g = oscillator_family(2)
        .unwrap()
        .scaled(&MonomialOrder::deglex())
        .unwrap();
    let c = Polynomial::constant(g.ring(), rat(4));
    let s = subduct(&c, &g).unwrap();
    assert!(s.steps.is_empty());
    assert_eq!(s.remainder, c);
}

#[test]
fn example_relation_leaves_a_remainder() {
    let fam = fixtures::ex211_family().unwrap();
    let g = fam.scaled(&MonomialOrder::deglex()).unwrap();
    let h = g.generators();
    // (s(x²+x))(s(y²+1)) − (s(xy+y))²
    let f = &(&h[0] * &h[2]) - &(&h[1] * &h[1]);
    let s = subduct(&f, &g).unwrap();
    assert!(!s.remainder.is_zero());
    assert!(verify_subduction(&f, &g, &s).unwrap());
}

#[test]
fn decompositions() {
    let lts = [m(&[1, 0]), m(&[1, 1]), m(&[1, 3])];
    assert_eq!(monomial_decompose(&m(&[2, 4]), &lts), Some(vec![0, 1, 1]));
    assert_eq!(monomial_decompose(&m(&[0, 0]), &lts), Some(vec![0, 0, 0]));
    assert_eq!(monomial_decompose(&m(&[1, 1, 0]), &[m(&[1, 0, 1])]), None);
}

#[test]
fn verdicts_are_order_stable() {
    let fams = [
        (oscillator_family(2).unwrap(), Verdict::Certified),
        (oscillator_family(3).unwrap(), Verdict::Certified),
        (fixtures::ex211_family().unwrap(), Verdict::Refuted),
        (fixtures::ex213_semimixed().unwrap(), Verdict::Refuted),
        (fixtures::ex213_unmixed().unwrap(), Verdict::Certified),
    ];
    for (fam, expected) in &fams {
        for ord in [MonomialOrder::deglex(), MonomialOrder::degrevlex()] {
            assert_eq!(is_khovanskii(fam, &ord).unwrap().verdict, *expected);
        }
    }
}

#[test]
fn decoupled_copies_certify() {
    let ord = MonomialOrder::deglex();
    let (fam, part) = coupled_family(2, 2).unwrap();
    assert_eq!(
        decoupled_check(&fam, &part, &ord).unwrap().verdict,
        Verdict::Certified
    );

    let (fam, part) = coupled_family(3, 3).unwrap();
    assert_eq!(
        decoupled_check(&fam, &part, &ord).unwrap().verdict,
        Verdict::Certified
    );
    assert_eq!(
        khovanskii_bound(&fam, &ord, Some(&part)).unwrap().bound,
        Some(729)
    );

    let single = oscillator_family(2).unwrap();
    let all: Vec<usize> = (0..single.blocks()[0].len()).collect();
    assert_eq!(
        decoupled_check(&single, &[all], &ord).unwrap().verdict,
        is_khovanskii(&single, &ord).unwrap().verdict
    );
}

/// Exhaustive oracle: every `α` with entries up to the target degree.
fn brute_decompose(target: &[u32], lts: &[Vec<u32>]) -> bool {
    let bound = target.iter().sum::<u32>() + 1;
    let k = lts.len();
    let total = (bound as usize).pow(k as u32);
    (0..total).any(|mut code| {
        let mut sum = vec![0u32; target.len()];
        for l in lts {
            let a = (code % bound as usize) as u32;
            code /= bound as usize;
            for (s, e) in sum.iter_mut().zip(l) {
                *s += a * e;
            }
        }
        sum == target
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decompose_matches_exhaustive_search(
        target in prop::collection::vec(0u32..=4, 2),
        lts in prop::collection::vec(prop::collection::vec(0u32..=2, 2), 1..=3),
    ) {
        let lts: Vec<Vec<u32>> = lts.into_iter().filter(|l| l.iter().any(|&e| e > 0)).collect();
        let monos: Vec<Monomial> = lts.iter().cloned().map(Monomial::new).collect();
        let got = monomial_decompose(&Monomial::new(target.clone()), &monos);
        prop_assert_eq!(got.is_some(), brute_decompose(&target, &lts));
        if let Some(alpha) = got {
            let mut sum = vec![0u32; 2];
            for (a, l) in alpha.iter().zip(&lts) {
                sum[0] += a * l[0];
                sum[1] += a * l[1];
            }
            prop_assert_eq!(sum, target);
        }
    }

    /// Subduction logs replay to the input for random products of generators.
    #[test]
    fn subduction_replays(picks in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 1..=3)) {
        let fam = BlockFamily::parse(&["x", "y"], &[&["1", "x", "y", "x^3 + x*y^2", "x^2*y + y^3"]], &[2]).unwrap();
        let g = fam.scaled(&MonomialOrder::deglex()).unwrap();
        let h = g.generators();
        let mut f = Polynomial::zero(g.ring());
        for (i, j, c) in picks {
            f = &f + &(&h[i] * &h[j]).scale(&rat(c));
        }
        let s = subduct(&f, &g).unwrap();
        prop_assert!(verify_subduction(&f, &g, &s).unwrap());
        // the family is a Khovanskii basis, so elements of the algebra subduct to zero
        prop_assert!(s.is_zero());
    }
}
