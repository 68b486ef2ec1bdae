mod common;

use proptest::prelude::*;
use semimixed::counting::{leading_polytopes, oscillator_family};
use semimixed::fixtures;
use semimixed::polyring::ratio;
use semimixed::polytope::{
    convex_hull, minkowski_sum, mixed_volume, mv_with_multiplicity, newton_polytope, normalized_volume,
    volume, LatticePolytope,
};
use semimixed::{MonomialOrder, Polynomial, Ring};

fn poly(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::new(dim, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn unit_square() -> LatticePolytope {
    poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

#[test]
fn newton_polytopes() {
    let ring = Ring::new(["u", "v"]);
    let p = newton_polytope(&Polynomial::parse(&ring, "1 + u + v").unwrap(), &[]).unwrap();
    assert_eq!(normalized_volume(&p), 1);
    let c = newton_polytope(&Polynomial::parse(&ring, "5").unwrap(), &[]).unwrap();
    assert_eq!(c.vertices(), &[vec![0, 0]]);

    let q = leading_polytopes(&oscillator_family(3).unwrap(), &MonomialOrder::deglex()).unwrap();
    let mut v = q[0].vertices().to_vec();
    v.sort();
    assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![4, 1], vec![5, 0]]);

    let suv = Ring::new(["s", "u", "v"]);
    let f = Polynomial::parse(&suv, "s*u + s*v").unwrap();
    assert!(newton_polytope(&f, &["s"]).is_ok());
    assert!(newton_polytope(&(&f + &Polynomial::parse(&suv, "1").unwrap()), &["s"]).is_err());
}

#[test]
fn hulls() {
    let h = convex_hull(&[vec![0, 0], vec![1, 0], vec![3, 0], vec![2, 1], vec![0, 1]]);
    let mut v = h.vertices.clone();
    v.sort();
    assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![2, 1], vec![3, 0]]);

    let h = convex_hull(&[vec![2, 3]]);
    assert_eq!(h.vertices, vec![vec![2, 3]]);
    assert!(h.facets.is_empty());

    // every candidate point of the four-fold Minkowski sum satisfies every facet
    let qs = fixtures::sec62_polytopes().unwrap();
    let sum = minkowski_sum(&qs).unwrap();
    assert!(sum.is_full_dimensional());
    for p in sum.points() {
        assert!(sum.facets().iter().all(|f| f.contains(p)));
    }
}

#[test]
fn volumes() {
    assert_eq!(volume(&unit_square()), ratio(1, 1));
    assert_eq!(
        volume(&poly(2, &[&[0, 0], &[3, 0], &[2, 1], &[0, 1]])),
        ratio(5, 2)
    );
    assert_eq!(volume(&poly(2, &[&[0, 0], &[2, 2]])), ratio(0, 1));
    let simplex = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(normalized_volume(&simplex), 1);
}

#[test]
fn minkowski_sums() {
    let origin = poly(2, &[&[0, 0]]);
    assert_eq!(
        minkowski_sum(&[unit_square(), origin]).unwrap().vertices(),
        unit_square().vertices()
    );
    let e1 = poly(2, &[&[0, 0], &[1, 0]]);
    let e2 = poly(2, &[&[0, 0], &[0, 1]]);
    let mut v = minkowski_sum(&[e1, e2]).unwrap().vertices().to_vec();
    v.sort();
    assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn mixed_volumes() {
    assert_eq!(mixed_volume(&fixtures::sec62_polytopes().unwrap()).unwrap(), 25);
    assert_eq!(mixed_volume(&[unit_square(), unit_square()]).unwrap(), 2);
    let axes: Vec<LatticePolytope> = (0..3)
        .map(|i| {
            let mut e = vec![0i64; 3];
            e[i] = 1;
            LatticePolytope::new(3, vec![vec![0; 3], e]).unwrap()
        })
        .collect();
    assert_eq!(mixed_volume(&axes).unwrap(), 1);
}

#[test]
fn multiplicities() {
    for n in 2..=5 {
        let q = leading_polytopes(&oscillator_family(n).unwrap(), &MonomialOrder::deglex()).unwrap();
        assert_eq!(mv_with_multiplicity(&q, &[2]).unwrap(), 4 * n as u128 - 3);
    }
    let qs = fixtures::sec62_polytopes().unwrap();
    assert_eq!(mv_with_multiplicity(&qs, &[1, 1, 1, 1]).unwrap(), 25);

    let t = poly(2, &[&[0, 0], &[3, 0], &[2, 1], &[0, 1]]);
    let a = t.embed(4, &[0, 1]).unwrap();
    let b = t.embed(4, &[2, 3]).unwrap();
    assert_eq!(mv_with_multiplicity(&[a, b], &[2, 2]).unwrap(), 25);
}

#[test]
fn trapezoid_oracle() {
    for n in 2..=10i64 {
        let mut pts = vec![(0, 0), (0, 1)];
        pts.extend((1..2 * n).map(|k| (k, 0)));
        pts.extend((1..2 * n - 1).map(|k| (k, 1)));
        assert_eq!(common::twice_area(&pts), 4 * n as i128 - 3);
        assert_eq!(normalized_volume(&common::to_polytope(&pts)), 4 * n as u128 - 3);
    }
}

fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop_oneof![
        Just([[1, 0], [0, 1]]),
        Just([[0, 1], [1, 0]]),
        Just([[1, 1], [0, 1]]),
        Just([[1, 0], [-1, 1]]),
        Just([[2, 1], [1, 1]]),
        Just([[-1, 0], [0, 1]]),
    ]
}

#[test]
fn mixed_volume_properties() {
    common::prop_mixed_volume(common::CASES).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn volume_matches_shoelace(p in common::point_set(6, 1..=8)) {
        prop_assert_eq!(normalized_volume(&common::to_polytope(&p)) as i128, common::twice_area(&p));
    }

    #[test]
    fn unimodular_invariance(p in common::point_set(5, 1..=6), q in common::point_set(5, 1..=6), m in unimodular(), shift in (-3i64..=3, -3i64..=3)) {
        let apply = |pts: &[(i64, i64)]| -> Vec<(i64, i64)> {
            pts.iter().map(|&(x, y)| (m[0][0] * x + m[0][1] * y + shift.0, m[1][0] * x + m[1][1] * y + shift.1)).collect()
        };
        let mv = |a: &[(i64, i64)], b: &[(i64, i64)]| mixed_volume(&[common::to_polytope(a), common::to_polytope(b)]).unwrap();
        prop_assert_eq!(mv(&p, &q), mv(&apply(&p), &apply(&q)));
        prop_assert_eq!(normalized_volume(&common::to_polytope(&p)), normalized_volume(&common::to_polytope(&apply(&p))));
    }

    /// `MV(P, ..., P) = m! vol(P)`.
    #[test]
    fn diagonal_mixed_volume(p in common::point_set(4, 1..=6)) {
        let pp = common::to_polytope(&p);
        prop_assert_eq!(mixed_volume(&[pp.clone(), pp.clone()]).unwrap(), normalized_volume(&pp));
        prop_assert_eq!(mv_with_multiplicity(std::slice::from_ref(&pp), &[2]).unwrap(), normalized_volume(&pp));
    }
}
