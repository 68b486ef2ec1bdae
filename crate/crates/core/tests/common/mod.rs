//! Independent oracles and shared randomized properties.
//!
//! Nothing here calls the library's geometry or counting code: the 2D hull,
//! area and mixed volume below are written from scratch so they can serve as
//! reference values for the library.

#![allow(dead_code)]

use std::cmp::Ordering;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semimixed::counting::{
    generic_count, hilbert_function, hilbert_function_initial, multifreq_family, oscillator_family,
};
use semimixed::fixtures;
use semimixed::groebner::{ideals_equal, Ideal};
use semimixed::khovanskii::{is_khovanskii, BlockFamily};
use semimixed::polytope::{mixed_volume, LatticePolytope};
use semimixed::toric::{fiber_product_generators, is_block_homogeneous, toric_ideal, Factor, MonomialMap};
use semimixed::{Monomial, MonomialOrder};

pub const CASES: u32 = 256;

// ---------------------------------------------------------------------------
// 2D oracles

/// Convex hull by Andrew's monotone chain, counter-clockwise, no collinear points.
pub fn hull2d(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p: Vec<(i64, i64)> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area of the convex hull (shoelace).
pub fn twice_area(points: &[(i64, i64)]) -> i128 {
    let h = hull2d(points);
    if h.len() < 3 {
        return 0;
    }
    let mut s: i128 = 0;
    for i in 0..h.len() {
        let (a, b) = (h[i], h[(i + 1) % h.len()]);
        s += a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128;
    }
    s.abs()
}

pub fn minkowski2d(p: &[(i64, i64)], q: &[(i64, i64)]) -> Vec<(i64, i64)> {
    p.iter()
        .flat_map(|a| q.iter().map(move |b| (a.0 + b.0, a.1 + b.1)))
        .collect()
}

/// `MV(P, Q) = area(P + Q) − area(P) − area(Q)`, normalized so `MV(P, P) = 2 area(P)`.
pub fn mv2d(p: &[(i64, i64)], q: &[(i64, i64)]) -> i128 {
    let twice = twice_area(&minkowski2d(p, q)) - twice_area(p) - twice_area(q);
    assert_eq!(twice % 2, 0, "mixed area of lattice polygons is an integer");
    twice / 2
}

pub fn to_polytope(p: &[(i64, i64)]) -> LatticePolytope {
    LatticePolytope::new(2, p.iter().map(|&(a, b)| vec![a, b]).collect()).expect("2D points")
}

pub fn binomial(n: u128, k: u128) -> u128 {
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

// ---------------------------------------------------------------------------
// strategies

pub fn point_set(max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0..=max, 0..=max), len)
}

pub fn monomial(nvars: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, nvars).prop_map(Monomial::new)
}

pub fn orders() -> Vec<(&'static str, MonomialOrder)> {
    vec![
        ("lex", MonomialOrder::lex()),
        ("deglex", MonomialOrder::deglex()),
        ("degrevlex", MonomialOrder::degrevlex()),
    ]
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Abort(why) => format!("aborted: {why}"),
        TestError::Fail(why, input) => format!("{why} for input {input:?}"),
    })
}

// ---------------------------------------------------------------------------
// shared properties

/// Total, multiplicative well-orders: 1 is minimal and `a > b ⇒ at > bt`.
pub fn prop_orders(cases: u32) -> Result<(), String> {
    run(
        cases,
        (monomial(4, 6), monomial(4, 6), monomial(4, 6), monomial(4, 6)),
        |(a, b, c, t)| {
            for (name, ord) in orders() {
                let one = Monomial::one(4);
                prop_assert_ne!(ord.cmp(&one, &a), Ordering::Greater, "{} not a well-order", name);
                let ab = ord.cmp(&a, &b);
                prop_assert_eq!(ab, ord.cmp(&b, &a).reverse(), "{} not antisymmetric", name);
                prop_assert_eq!(ab == Ordering::Equal, a == b, "{} not total", name);
                prop_assert_eq!(ord.cmp(&a.mul(&t), &b.mul(&t)), ab, "{} not multiplicative", name);
                if ab != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater, "{} not transitive", name);
                }
            }
            Ok(())
        },
    )
}

/// Mixed volume is symmetric, monotone, multilinear and agrees with the
/// independent 2D oracle.
pub fn prop_mixed_volume(cases: u32) -> Result<(), String> {
    run(
        cases,
        (
            point_set(5, 1..=5),
            point_set(5, 1..=5),
            point_set(5, 1..=5),
            point_set(5, 1..=3),
        ),
        |(p, q, r, extra)| {
            let (pp, qp, rp) = (to_polytope(&p), to_polytope(&q), to_polytope(&r));
            let mv = |a: &LatticePolytope, b: &LatticePolytope| {
                mixed_volume(&[a.clone(), b.clone()]).unwrap() as i128
            };
            let pq = mv(&pp, &qp);
            prop_assert_eq!(pq, mv2d(&p, &q), "oracle");
            prop_assert_eq!(pq, mv(&qp, &pp), "symmetry");
            let bigger: Vec<(i64, i64)> = p.iter().chain(extra.iter()).copied().collect();
            prop_assert!(mv(&to_polytope(&bigger), &qp) >= pq, "monotonicity");
            let sum = minkowski2d(&p, &r);
            prop_assert_eq!(mv(&to_polytope(&sum), &qp), pq + mv(&rp, &qp), "multilinearity");
            Ok(())
        },
    )
}

/// Certified families used for the Hilbert-function property.
pub fn certified_families() -> Vec<(&'static str, BlockFamily)> {
    vec![
        ("oscillator n=2", oscillator_family(2).expect("family")),
        ("oscillator n=3", oscillator_family(3).expect("family")),
        ("two harmonics", multifreq_family(2).expect("family")),
        ("unmixed 2.13", fixtures::ex213_unmixed().expect("family")),
    ]
}

/// Random multidegrees of total degree at most 3.
fn small_alpha(r: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=3, r)
        .prop_filter("total degree at most 3", |a| a.iter().sum::<usize>() <= 3)
}

/// `H_S(α) = H_{S_in}(α)` on Khovanskii bases, for `|α| ≤ 3`.
pub fn prop_hilbert(cases: u32) -> Result<(), String> {
    let fams = certified_families();
    let ord = MonomialOrder::deglex();
    let strategy = (0..fams.len()).prop_flat_map(|i| (Just(i), small_alpha(if i == 2 { 4 } else { 1 })));
    run(cases, strategy, |(i, alpha)| {
        let fam = &fams[i].1;
        let h = hilbert_function(fam, &alpha).unwrap();
        let hin = hilbert_function_initial(fam, &ord, &alpha).unwrap();
        prop_assert_eq!(h, hin, "{} at {:?}", fams[i].0, alpha);
        Ok(())
    })
}

/// Random unmixed families in two variables: `H_S ≥ H_{S_in}` always, with
/// equality whenever the family is certified.
pub fn prop_hilbert_random(cases: u32) -> Result<(), String> {
    let ord = MonomialOrder::deglex();
    let extra = prop::collection::vec(
        prop::collection::vec(((0u32..=3, 0u32..=3), -3i64..=3), 1..=3),
        1..=2,
    );
    run(cases, (extra, 1usize..=3), |(extra, alpha)| {
        let mut texts = vec!["1".to_string(), "x".to_string(), "y".to_string()];
        for terms in extra {
            let t: Vec<String> = terms
                .iter()
                .filter(|(_, c)| *c != 0)
                .map(|((a, b), c)| format!("{c}*x^{a}*y^{b}"))
                .collect();
            if !t.is_empty() {
                texts.push(t.join(" + "));
            }
        }
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let Ok(fam) = BlockFamily::parse(&["x", "y"], &[&refs], &[2]) else {
            return Ok(());
        };
        let Ok(cert) = is_khovanskii(&fam, &ord) else {
            return Ok(());
        };
        let h = hilbert_function(&fam, &[alpha]).unwrap();
        let hin = hilbert_function_initial(&fam, &ord, &[alpha]).unwrap();
        prop_assert!(h >= hin, "{:?}: H_S {} < H_in {}", texts, h, hin);
        if cert.is_certified() {
            prop_assert_eq!(h, hin, "{:?} is certified", texts);
        }
        Ok(())
    })
}

/// Generic counts do not depend on the seed.
pub fn prop_seed_agreement(cases: u32) -> Result<(), String> {
    let fams: Vec<(BlockFamily, u64)> = vec![
        (oscillator_family(2).expect("family"), 5),
        (oscillator_family(3).expect("family"), 9),
        (fixtures::ex211_family().expect("family"), 6),
        (fixtures::ex213_unmixed().expect("family"), 5),
    ];
    run(cases, (0..fams.len(), any::<u64>()), |(i, seed)| {
        let (fam, expected) = &fams[i];
        let c = generic_count(fam, seed).unwrap();
        prop_assert_eq!(c.finite(), Some(*expected), "seed {}", seed);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// fiber products

/// `(h, x_1..x_a) -> (h, h x^{e_1}, ..., h x^{e_c})` with `a ≤ 3`, `c ≤ 4`, exponents ≤ 4.
fn random_columns(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<i64>>) {
    let a = rng.gen_range(1..=3usize);
    let c = rng.gen_range(2..=4usize);
    let cols = (0..c)
        .map(|_| (0..a).map(|_| rng.gen_range(0..=4)).collect())
        .collect();
    (a, cols)
}

fn factor_map(h: &str, stem: &str, target: &str, a: usize, cols: &[Vec<i64>]) -> MonomialMap {
    let mut source = vec![h.to_string()];
    source.extend((1..=a).map(|i| format!("{stem}{i}")));
    let targets: Vec<String> = (0..=cols.len()).map(|j| format!("{target}{j}")).collect();
    let mut rows = vec![vec![1i64; cols.len() + 1]];
    for i in 0..a {
        let mut row = vec![0i64];
        row.extend(cols.iter().map(|c| c[i]));
        rows.push(row);
    }
    MonomialMap::with_targets(source, targets, rows)
        .and_then(|m| m.with_homogenizing(&[h]))
        .expect("valid factor")
}

/// One seeded trial: union of factor generators versus the toric ideal of the joint map.
pub fn fiber_trial(seed: u64) -> Result<bool, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, ca) = random_columns(&mut rng);
    let (b, cb) = random_columns(&mut rng);
    let fa = factor_map("s", "x", "z", a, &ca);
    let fb = factor_map("t", "y", "w", b, &cb);
    let ord = MonomialOrder::degrevlex();
    let ia = toric_ideal(&fa, &ord).map_err(|x| x.to_string())?.to_ideal();
    let ib = toric_ideal(&fb, &ord).map_err(|x| x.to_string())?.to_ideal();
    let joined = fiber_product_generators(&[
        Factor {
            ideal: &ia,
            homogenizing: "z0",
        },
        Factor {
            ideal: &ib,
            homogenizing: "w0",
        },
    ])
    .map_err(|x| x.to_string())?;
    // joint map (s, x, y) -> (s, s x^{ca}, s y^{cb}) with the w-coordinates after the z's
    let mut source = vec!["s".to_string()];
    source.extend((1..=a).map(|i| format!("x{i}")));
    source.extend((1..=b).map(|i| format!("y{i}")));
    let mut targets: Vec<String> = (0..=ca.len()).map(|j| format!("z{j}")).collect();
    targets.extend((1..=cb.len()).map(|j| format!("w{j}")));
    let width = 1 + ca.len() + cb.len();
    let mut rows = vec![vec![1i64; width]];
    for i in 0..a {
        let mut row = vec![0i64];
        row.extend(ca.iter().map(|c| c[i]));
        row.extend(std::iter::repeat_n(0, cb.len()));
        rows.push(row);
    }
    for i in 0..b {
        let mut row = vec![0i64; 1 + ca.len()];
        row.extend(cb.iter().map(|c| c[i]));
        rows.push(row);
    }
    let joint = MonomialMap::with_targets(source, targets, rows)
        .and_then(|m| m.with_homogenizing(&["s"]))
        .map_err(|x| x.to_string())?;
    let direct = toric_ideal(&joint, &ord).map_err(|x| x.to_string())?.to_ideal();
    let direct = Ideal::new(
        joined.ring(),
        direct
            .generators()
            .iter()
            .map(|p| p.embed(joined.ring()))
            .collect::<Result<_, _>>()
            .map_err(|x| x.to_string())?,
    )
    .map_err(|x| x.to_string())?;
    let homogeneous = is_block_homogeneous(&joint, direct.generators());
    Ok(homogeneous && ideals_equal(&joined, &direct, &ord).map_err(|x| x.to_string())?)
}
