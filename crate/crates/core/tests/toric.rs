mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use semimixed::fixtures;
use semimixed::groebner::{ideals_equal, Count, Ideal};
use semimixed::toric::{
    fiber_product_generators, lattice_index, lattice_kernel, lemma53_generators, toric_ideal, trapezoid_map,
    Factor, MonomialMap,
};
use semimixed::{MonomialOrder, Polynomial};

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

#[test]
fn kernel_examples() {
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    assert!(lattice_kernel(&id).is_empty());

    let a = vec![vec![1, 1, 1, 1, 1], vec![0, 1, 0, 3, 2], vec![0, 0, 1, 0, 1]];
    let k = lattice_kernel(&a);
    assert_eq!(k.len(), 2);
    for v in &k {
        assert!(mat_vec(&a, v).iter().all(|&x| x == 0));
    }
    // (2,-3,0,1,0) and (2,-2,-1,0,1) are in the span: solve on the last two coordinates
    for target in [[2, -3, 0, 1, 0], [2, -2, -1, 0, 1]] {
        assert!(mat_vec(&a, &target).iter().all(|&x| x == 0));
        let det = k[0][3] * k[1][4] - k[0][4] * k[1][3];
        assert_ne!(det, 0);
        let c0 = (target[3] * k[1][4] - target[4] * k[1][3]) as f64 / det as f64;
        let c1 = (k[0][3] * target[4] - k[0][4] * target[3]) as f64 / det as f64;
        for i in 0..5 {
            assert!((c0 * k[0][i] as f64 + c1 * k[1][i] as f64 - target[i] as f64).abs() < 1e-9);
        }
    }

    let (map, _) = fixtures::ex33_map().unwrap();
    let rows: Vec<Vec<i64>> = (0..map.nsource())
        .map(|i| (0..map.ntarget()).map(|j| map.column(j)[i]).collect())
        .collect();
    assert_eq!(lattice_kernel(&rows).len(), 2);
}

#[test]
fn toric_ideal_examples() {
    let ord = MonomialOrder::degrevlex();
    let (map, gens) = fixtures::ex33_map().unwrap();
    let listed = Ideal::new(&map.target_ring(), gens).unwrap();
    assert!(ideals_equal(&toric_ideal(&map, &ord).unwrap().to_ideal(), &listed, &ord).unwrap());

    let map = trapezoid_map(2).unwrap();
    let listed = Ideal::parse(
        &map.target_ring(),
        &["z1*z4 - z2*z3", "z0^2*z3 - z1^3", "z0^2*z4 - z1^2*z2"],
    )
    .unwrap();
    assert!(ideals_equal(&toric_ideal(&map, &ord).unwrap().to_ideal(), &listed, &ord).unwrap());

    let free = MonomialMap::new(
        vec!["s", "x", "y"],
        vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]],
    )
    .unwrap();
    assert!(toric_ideal(&free, &ord).unwrap().is_empty());
}

#[test]
fn explicit_binomial_counts() {
    let listed = lemma53_generators(2).unwrap();
    let polys: Vec<String> = listed.polynomials().iter().map(ToString::to_string).collect();
    assert_eq!(polys.len(), 3);
    for n in 2..=6usize {
        let pairs = (1..=2 * n).map(|l| (l + 3..=2 * n).count()).sum::<usize>();
        assert_eq!(lemma53_generators(n).unwrap().len(), (2 * n - 2) + pairs);
    }
    assert_eq!(lemma53_generators(3).unwrap().len(), 10);
}

#[test]
fn lattice_index_examples() {
    let free = MonomialMap::new(
        vec!["s", "x", "y"],
        vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]],
    )
    .unwrap()
    .with_homogenizing(&["s"])
    .unwrap();
    assert_eq!(lattice_index(&free), Count::Finite(1));
    for n in 2..=5 {
        assert_eq!(lattice_index(&trapezoid_map(n).unwrap()), Count::Finite(1));
    }
    let squares = MonomialMap::new(vec!["s", "x"], vec![vec![1, 1], vec![0, 2]])
        .unwrap()
        .with_homogenizing(&["s"])
        .unwrap();
    assert_eq!(lattice_index(&squares), Count::Finite(2));
}

#[test]
fn fiber_product_of_two_trapezoids() {
    let ord = MonomialOrder::degrevlex();
    let a = toric_ideal(&trapezoid_map(2).unwrap(), &ord).unwrap().to_ideal();
    let rename: HashMap<String, String> = (0..5).map(|i| (format!("z{i}"), format!("w{i}"))).collect();
    let wring = semimixed::Ring::new((0..5).map(|i| format!("w{i}")));
    let b = Ideal::new(
        &wring,
        a.generators()
            .iter()
            .map(|g| g.rename_into(&rename, &wring).unwrap())
            .collect(),
    )
    .unwrap();
    let joined = fiber_product_generators(&[
        Factor {
            ideal: &a,
            homogenizing: "z0",
        },
        Factor {
            ideal: &b,
            homogenizing: "w0",
        },
    ])
    .unwrap();
    assert_eq!(joined.ring().nvars(), 9);
    assert_eq!(joined.generators().len(), 6);

    // (s, u, v, x, y) -> (s, su, sv, su^3, svu^2, sx, sy, sx^3, syx^2)
    let mut rows = vec![vec![1i64; 9], vec![0; 9], vec![0; 9], vec![0; 9], vec![0; 9]];
    for (j, (e1, e2)) in [(1, 0), (0, 1), (3, 0), (2, 1)].into_iter().enumerate() {
        rows[1][1 + j] = e1;
        rows[2][1 + j] = e2;
        rows[3][5 + j] = e1;
        rows[4][5 + j] = e2;
    }
    let targets: Vec<String> = joined.ring().vars().to_vec();
    let joint = MonomialMap::with_targets(vec!["s", "u", "v", "x", "y"], targets, rows).unwrap();
    let direct = toric_ideal(&joint, &ord).unwrap().to_ideal();
    let direct = Ideal::new(
        joined.ring(),
        direct
            .generators()
            .iter()
            .map(|g| g.embed(joined.ring()).unwrap())
            .collect(),
    )
    .unwrap();
    assert!(ideals_equal(&joined, &direct, &ord).unwrap());

    let single = fiber_product_generators(&[Factor {
        ideal: &a,
        homogenizing: "z0",
    }])
    .unwrap();
    assert_eq!(single.generators(), a.generators());
}

#[test]
fn twenty_random_fiber_products() {
    for seed in 0..20 {
        assert!(common::fiber_trial(seed).unwrap(), "seed {seed}");
    }
}

fn random_map() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=2).prop_flat_map(|a| {
        (
            Just(a),
            prop::collection::vec(prop::collection::vec(0i64..=3, a), 2..=4),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Every toric generator vanishes under the monomial parametrization.
    #[test]
    fn generators_vanish_on_the_map((a, cols) in random_map()) {
        let mut rows = vec![vec![1i64; cols.len()]];
        for i in 0..a {
            rows.push(cols.iter().map(|c| c[i]).collect());
        }
        let mut source = vec!["s".to_string()];
        source.extend((1..=a).map(|i| format!("x{i}")));
        let map = MonomialMap::new(source, rows).unwrap();
        let gb = toric_ideal(&map, &MonomialOrder::degrevlex()).unwrap();
        let images = map.images();
        let src = map.source_ring();
        for g in gb.generators() {
            prop_assert!(g.substitute(&images, &src).unwrap().is_zero(), "{}", g);
            let p: &Polynomial = g;
            prop_assert_eq!(p.num_terms(), 2);
        }
    }

    #[test]
    fn fiber_products_agree(seed in 20u64..100_000) {
        prop_assert!(common::fiber_trial(seed).unwrap());
    }
}
