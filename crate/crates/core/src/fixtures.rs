//! Named reference inputs together with the outputs they are known to give.
//!
//! Each fixture builds its input on demand through [`Fixture::data`]. The
//! expectations are plain `(quantity, value)` pairs so the command line can
//! print them next to the computed values.

use std::fmt;

use serde::Serialize;

use crate::counting::{coupled_family, multifreq_family, oscillator_family};
use crate::khovanskii::BlockFamily;
use crate::polyring::rat;
use crate::polytope::LatticePolytope;
use crate::resonator::{lower_bound_system, HBConfig, LowerBoundKind};
use crate::toric::{lemma53_generators, trapezoid_map, MonomialMap};
use crate::{MonomialOrder, PolySystem, Polynomial, Result, Ring};

/// Parameter used for the specialized lower-bound systems.
pub const LOWER_BOUND_PARAMETER: i64 = 3;

/// Input carried by a fixture.
#[derive(Clone, Debug)]
pub enum FixtureData {
    Family {
        family: BlockFamily,
        partition: Option<Vec<Vec<usize>>>,
    },
    System(PolySystem),
    Map {
        map: MonomialMap,
        /// Generators the toric ideal is expected to equal.
        generators: Vec<Polynomial>,
    },
    Polytopes {
        polytopes: Vec<LatticePolytope>,
        multiplicities: Vec<usize>,
    },
    /// Two Gröbner bases whose union fails to be one for the sum.
    GroebnerUnion {
        order: MonomialOrder,
        first: Vec<Polynomial>,
        second: Vec<Polynomial>,
        witness: Polynomial,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub quantity: &'static str,
    pub value: String,
}

/// A named input with its expected outputs.
#[derive(Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub expected: Vec<Expectation>,
    build: fn() -> Result<FixtureData>,
}

impl Fixture {
    pub fn data(&self) -> Result<FixtureData> {
        (self.build)()
    }

    pub fn expected(&self, quantity: &str) -> Option<&str> {
        self.expected
            .iter()
            .find(|e| e.quantity == quantity)
            .map(|e| e.value.as_str())
    }
}

impl fmt::Debug for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fixture")
            .field("name", &self.name)
            .field("expected", &self.expected)
            .finish()
    }
}

fn fixture(
    name: &'static str,
    summary: &'static str,
    expected: &[(&'static str, &str)],
    build: fn() -> Result<FixtureData>,
) -> Fixture {
    Fixture {
        name,
        summary,
        expected: expected
            .iter()
            .map(|&(quantity, value)| Expectation {
                quantity,
                value: value.to_string(),
            })
            .collect(),
        build,
    }
}

fn family(f: BlockFamily) -> FixtureData {
    FixtureData::Family {
        family: f,
        partition: None,
    }
}

pub fn ex211_family() -> Result<BlockFamily> {
    BlockFamily::parse(
        &["x", "y"],
        &[&["x^2 + x", "x*y + y", "y^2 + 1", "y^3 + 2"]],
        &[2],
    )
}

pub fn ex213_semimixed() -> Result<BlockFamily> {
    BlockFamily::parse(
        &["x", "y"],
        &[&["1", "y", "x^3 + x*y^2"], &["1", "x", "x^2*y + y^3"]],
        &[1, 1],
    )
}

pub fn ex213_unmixed() -> Result<BlockFamily> {
    BlockFamily::parse(
        &["x", "y"],
        &[&["1", "x", "y", "x^3 + x*y^2", "x^2*y + y^3"]],
        &[2],
    )
}

/// `(s, x, t, y) ↦ (s, s x², s y, t, t x, t y)` and its three listed binomials.
pub fn ex33_map() -> Result<(MonomialMap, Vec<Polynomial>)> {
    let targets: Vec<String> = ["z0", "z1", "z2", "w0", "w1", "w2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let map = MonomialMap::with_targets(
        vec!["s", "x", "t", "y"],
        targets.clone(),
        vec![
            vec![1, 1, 1, 0, 0, 0],
            vec![0, 2, 0, 0, 1, 0],
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 0, 1, 0, 0, 1],
        ],
    )?
    .with_homogenizing(&["s", "t"])?;
    let ring = Ring::try_new(targets)?;
    let gens = ["z2*w0 - z0*w2", "z2*w1^2 - z1*w0*w2", "z1*w0^2 - z0*w1^2"]
        .iter()
        .map(|t| Polynomial::parse(&ring, t))
        .collect::<Result<Vec<_>>>()?;
    Ok((map, gens))
}

/// Lex order with `z` largest and the `w` block below the `z` block.
pub fn ex36_data() -> Result<FixtureData> {
    let ring = Ring::new(["z", "z1", "z2", "z3", "z4", "w1", "w2", "w3", "w4"]);
    let parse = |ts: &[&str]| {
        ts.iter()
            .map(|t| Polynomial::parse(&ring, t))
            .collect::<Result<Vec<_>>>()
    };
    Ok(FixtureData::GroebnerUnion {
        order: MonomialOrder::lex(),
        first: parse(&["z1*z4 - z3*z2", "z^2*z3 - z1^3", "z^2*z4 - z1^2*z2"])?,
        second: parse(&["w1*w4 - w3*w2", "z^2*w3 - w1^3", "z^2*w4 - w1^2*w2"])?,
        witness: Polynomial::parse(&ring, "z2^3*z3^2*w4 - z4^3*w1^2*w2")?,
    })
}

/// The four leading-term polytopes of the two-harmonic family, given by
/// columns over the rows `u1, v1, u2, v2`.
pub fn sec62_polytopes() -> Result<Vec<LatticePolytope>> {
    let blocks: [[[i64; 5]; 4]; 4] = [
        [[0, 1, 0, 3, 1], [0, 0, 1, 0, 0], [0, 0, 0, 0, 2], [0, 0, 0, 0, 0]],
        [[0, 1, 0, 2, 0], [0, 0, 1, 1, 1], [0, 0, 0, 0, 2], [0, 0, 0, 0, 0]],
        [[0, 0, 0, 0, 2], [0, 0, 0, 0, 0], [0, 1, 0, 3, 1], [0, 0, 1, 0, 0]],
        [[0, 0, 0, 0, 2], [0, 0, 0, 0, 0], [0, 1, 0, 2, 0], [0, 0, 1, 1, 1]],
    ];
    blocks
        .iter()
        .map(|rows| {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
            LatticePolytope::from_columns(&rows)
        })
        .collect()
}

fn lemma53(n: usize) -> Result<FixtureData> {
    let map = trapezoid_map(n)?;
    let generators = lemma53_generators(n)?.polynomials();
    Ok(FixtureData::Map { map, generators })
}

fn lower_single(n: usize) -> Result<FixtureData> {
    lower_bound_system(LowerBoundKind::Single(n), &rat(LOWER_BOUND_PARAMETER)).map(FixtureData::System)
}

fn lower_multi(m: usize) -> Result<FixtureData> {
    lower_bound_system(LowerBoundKind::Multi(m), &rat(LOWER_BOUND_PARAMETER)).map(FixtureData::System)
}

/// Every fixture, sorted by name.
pub fn registry() -> Vec<Fixture> {
    let mut out = vec![
        fixture(
            "ex2.11",
            "s(x²+x), s(xy+y), s(y²+1), s(y³+2): not a Khovanskii basis",
            &[
                ("verdict", "REFUTED"),
                ("generic_count", "6"),
                ("leading_torus_count", "2"),
            ],
            || ex211_family().map(family),
        ),
        fixture(
            "ex2.13-semimixed",
            "two blocks {1, y, x³+xy²} and {1, x, x²y+y³}",
            &[("verdict", "REFUTED")],
            || ex213_semimixed().map(family),
        ),
        fixture(
            "ex2.13-unmixed",
            "one block {1, x, y, x³+xy², x²y+y³}",
            &[("verdict", "CERTIFIED")],
            || ex213_unmixed().map(family),
        ),
        fixture(
            "ex3.3",
            "toric ideal of (s, x, t, y) ↦ (s, sx², sy, t, tx, ty)",
            &[(
                "toric_ideal",
                "z2*w0 - z0*w2, z2*w1^2 - z1*w0*w2, z1*w0^2 - z0*w1^2",
            )],
            || {
                let (map, generators) = ex33_map()?;
                Ok(FixtureData::Map { map, generators })
            },
        ),
        fixture(
            "ex3.6",
            "union of two lex Gröbner bases that is not a Gröbner basis of the sum",
            &[("witness_normal_form", "nonzero"), ("witness_in_sum", "true")],
            ex36_data,
        ),
        fixture(
            "hb-n2",
            "single cubic resonator with generic coefficients",
            &[("bkk_bound", "9"), ("system_count", "5")],
            || {
                HBConfig::single(2, 0)
                    .generate()
                    .map(|(s, _)| FixtureData::System(s))
            },
        ),
        fixture(
            "rem6.2",
            "two-harmonic family treated as unmixed (13 generators)",
            &[("verdict", "CERTIFIED"), ("normalized_volume", "33")],
            || multifreq_family(2)?.unmixed("s").map(family),
        ),
        fixture(
            "sec6.2",
            "two-harmonic semimixed family (20 generators, four blocks)",
            &[
                ("verdict", "CERTIFIED"),
                ("khovanskii_bound", "25"),
                ("generic_count", "25"),
            ],
            || multifreq_family(2).map(family),
        ),
        fixture(
            "sec6.2-polytopes",
            "the four leading-term polytopes of the two-harmonic family",
            &[("mixed_volume", "25")],
            || {
                Ok(FixtureData::Polytopes {
                    polytopes: sec62_polytopes()?,
                    multiplicities: vec![1, 1, 1, 1],
                })
            },
        ),
        fixture(
            "sec6.2-system",
            "two-harmonic harmonic-balance system with generic coefficients",
            &[("system_count", "25")],
            || {
                HBConfig::multifreq(2, 0)
                    .generate()
                    .map(|(s, _)| FixtureData::System(s))
            },
        ),
        fixture(
            "thm5.2",
            "two coupled cubic resonators (shared constant, decoupled blocks)",
            &[("khovanskii_bound", "25"), ("generic_count", "25")],
            || {
                let (family, partition) = coupled_family(2, 2)?;
                Ok(FixtureData::Family {
                    family,
                    partition: Some(partition),
                })
            },
        ),
    ];
    for (n, expect) in [(2usize, "5"), (3, "9"), (4, "13")] {
        let build: fn() -> Result<FixtureData> = match n {
            2 => || lemma53(2),
            3 => || lemma53(3),
            _ => || lemma53(4),
        };
        out.push(fixture(
            ["lemma5.3-n2", "lemma5.3-n3", "lemma5.3-n4"][n - 2],
            "trapezoid map and its explicit toric generators",
            &[("toric_ideal", "listed binomials"), ("normalized_volume", expect)],
            build,
        ));
        let build: fn() -> Result<FixtureData> = match n {
            2 => || lower_single(2),
            3 => || lower_single(3),
            _ => || lower_single(4),
        };
        out.push(fixture(
            ["sec5.1-n2", "sec5.1-n3", "sec5.1-n4"][n - 2],
            "specialized single-resonator system with 4n-3 solutions",
            &[("system_count", expect)],
            build,
        ));
    }
    for (n, expect) in [(2usize, "5"), (3, "9"), (4, "13"), (5, "17")] {
        let build: fn() -> Result<FixtureData> = match n {
            2 => || oscillator_family(2).map(family),
            3 => || oscillator_family(3).map(family),
            4 => || oscillator_family(4).map(family),
            _ => || oscillator_family(5).map(family),
        };
        out.push(fixture(
            ["thm5.1-n2", "thm5.1-n3", "thm5.1-n4", "thm5.1-n5"][n - 2],
            "unmixed single-resonator family of degree 2n-1",
            &[("khovanskii_bound", expect), ("generic_count", expect)],
            build,
        ));
    }
    for (m, expect) in [(1usize, "5"), (2, "25"), (3, "125")] {
        let build: fn() -> Result<FixtureData> = match m {
            1 => || lower_multi(1),
            2 => || lower_multi(2),
            _ => || lower_multi(3),
        };
        out.push(fixture(
            ["sec6.1-m1", "sec6.1-m2", "sec6.1-m3"][m - 1],
            "specialized multi-harmonic system with 5^M solutions",
            &[("system_count", expect)],
            build,
        ));
    }
    out.sort_by_key(|f| f.name);
    out
}

/// Looks up a fixture by name.
pub fn get(name: &str) -> Option<Fixture> {
    registry().into_iter().find(|f| f.name == name)
}

pub fn names() -> Vec<&'static str> {
    registry().iter().map(|f| f.name).collect()
}
