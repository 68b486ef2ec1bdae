//! Reference checks behind `verify-paper`.
//!
//! Every claim recomputes its values from scratch and compares them with the
//! known answers. Rows never carry timings so that reports are reproducible;
//! a time limit that is exceeded turns the row into a failure instead.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counting::{
    coupled_family, generic_count_with_budget, generic_system, khovanskii_bound, leading_polytopes,
    multifreq_family, oscillator_family, system_count_with_budget, torus_count_with_budget,
};
use crate::fixtures::{self, FixtureData, LOWER_BOUND_PARAMETER};
use crate::groebner::{ideals_equal, is_groebner, reduce_by, Count, Ideal};
use crate::khovanskii::{is_khovanskii, subduct, BlockFamily, Verdict};
use crate::polyring::{rat, ratio, Rational};
use crate::polytope::{mixed_volume, mv_with_multiplicity, normalized_volume, LatticePolytope};
use crate::resonator::{fourier_coefficient, fourier_quadrature_check, lower_bound_system, LowerBoundKind};
use crate::toric::{
    fiber_product_generators, lemma53_generators, toric_ideal_with_budget, trapezoid_map, Factor, MonomialMap,
};
use crate::{MonomialOrder, PolySystem, Polynomial, Result, Ring};

/// Claim identifiers with a one-line description, in report order.
pub const CLAIMS: &[(&str, &str)] = &[
    ("thm5.1", "generic count of the single-resonator family is 4n-3"),
    (
        "thm5.2",
        "two coupled resonators have 25 solutions; decoupled bounds are (4n-3)^N",
    ),
    (
        "sec6.2",
        "two-harmonic family is a Khovanskii basis with mixed volume 25",
    ),
    (
        "rem6.2",
        "the unmixed two-harmonic polytope has normalized volume 33",
    ),
    (
        "lemma5.3",
        "toric ideal of the trapezoid map equals the explicit binomials",
    ),
    ("lemma5.4", "each substituted g_m subducts to zero in one step"),
    (
        "ex2.11",
        "leading terms alone undercount: 6 solutions vs 2 in the torus",
    ),
    (
        "ex2.13",
        "semimixed check fails, unmixed check succeeds, for every order",
    ),
    ("ex3.3", "toric ideal of (s, sx^2, sy, t, tx, ty)"),
    (
        "ex3.6",
        "a union of Groebner bases that is not a Groebner basis of the sum",
    ),
    ("thm3.8", "fiber-product generators equal the direct toric ideal"),
    (
        "sec5.1",
        "specialized single-resonator systems have 4n-3 solutions",
    ),
    ("sec6.1", "specialized multi-harmonic systems have 5^M solutions"),
    ("lemma4.1", "Fourier coefficients of cos^{2k+1}"),
    ("trapezoid", "the trapezoid polytope has normalized volume 4n-3"),
    (
        "bkk",
        "the BKK bound 9 overestimates the 5 solutions of the cubic resonator",
    ),
];

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRow {
    pub claim: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Restrict `n` (or `M` for the multi-harmonic claim).
    pub n: Option<usize>,
    pub seed: u64,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: None,
            seed: 0,
            budget: crate::groebner::DEFAULT_BUDGET,
        }
    }
}

struct Rows {
    claim: &'static str,
    rows: Vec<ClaimRow>,
}

impl Rows {
    fn new(claim: &'static str) -> Self {
        Rows {
            claim,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, check: impl Into<String>, expected: impl ToString, computed: Result<String>) {
        let expected = expected.to_string();
        let (computed, passed) = match computed {
            Ok(c) => {
                let ok = c == expected;
                (c, ok)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.rows.push(ClaimRow {
            claim: self.claim.to_string(),
            check: check.into(),
            expected,
            computed,
            passed,
        });
    }

    /// Like `push`, but fails the row when `f` runs longer than `limit`.
    fn timed(
        &mut self,
        check: impl Into<String>,
        expected: impl ToString,
        limit: Duration,
        f: impl FnOnce() -> Result<String>,
    ) {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let out = match out {
            Ok(v) if elapsed > limit => Ok(format!("{v} (over {}s)", limit.as_secs())),
            other => other,
        };
        self.push(check, expected, out);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ns(opts: &VerifyOptions, default: &[usize]) -> Vec<usize> {
    match opts.n {
        Some(n) => vec![n],
        None => default.to_vec(),
    }
}

fn count_str(c: Count) -> String {
    c.to_string()
}

/// Runs one claim; unknown identifiers give an empty list.
pub fn run_claim(id: &str, opts: &VerifyOptions) -> Vec<ClaimRow> {
    let rows = match id {
        "thm5.1" => thm51(opts),
        "thm5.2" => thm52(opts),
        "sec6.2" => sec62(opts),
        "rem6.2" => rem62(),
        "lemma5.3" => lemma53(opts),
        "lemma5.4" => lemma54(opts),
        "ex2.11" => ex211(opts),
        "ex2.13" => ex213(),
        "ex3.3" => ex33(opts),
        "ex3.6" => ex36(opts),
        "thm3.8" => thm38(opts),
        "sec5.1" => sec51(opts),
        "sec6.1" => sec61(opts),
        "lemma4.1" => lemma41(opts),
        "trapezoid" => trapezoid(opts),
        "bkk" => bkk(opts),
        _ => return Vec::new(),
    };
    rows.rows
}

/// Runs every claim (or just `only`) in report order.
pub fn run_all(only: Option<&str>, opts: &VerifyOptions) -> Vec<ClaimRow> {
    CLAIMS
        .iter()
        .filter(|(id, _)| only.is_none_or(|o| o == *id))
        .flat_map(|(id, _)| run_claim(id, opts))
        .collect()
}

fn thm51(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("thm5.1");
    for n in ns(opts, &[2, 3, 4, 5]) {
        r.timed(format!("generic_count n={n}"), 4 * n - 3, secs(5), || {
            let fam = oscillator_family(n)?;
            generic_count_with_budget(&fam, opts.seed, opts.budget).map(count_str)
        });
    }
    r
}

fn thm52(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("thm5.2");
    r.timed("generic_count N=2 n=2", 25, secs(60), || {
        let (fam, _) = coupled_family(2, 2)?;
        generic_count_with_budget(&fam, opts.seed, opts.budget).map(count_str)
    });
    for (nres, n) in [(2usize, 2usize), (3, 2), (2, 3)] {
        let expected = (4 * n - 3).pow(nres as u32);
        r.push(
            format!("decoupled bound N={nres} n={n}"),
            expected,
            (|| {
                let (fam, part) = coupled_family(nres, n)?;
                let kb = khovanskii_bound(&fam, &MonomialOrder::deglex(), Some(&part))?;
                Ok(kb.bound.map_or("UNCERTIFIED".to_string(), |b| b.to_string()))
            })(),
        );
    }
    r
}

fn sec62(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("sec6.2");
    let ord = MonomialOrder::deglex();
    r.timed(
        "is_khovanskii (20 generators)",
        Verdict::Certified,
        secs(120),
        || Ok(is_khovanskii(&multifreq_family(2)?, &ord)?.verdict.to_string()),
    );
    r.push(
        "mv_with_multiplicity of the leading polytopes",
        25,
        (|| {
            let qs = leading_polytopes(&multifreq_family(2)?, &ord)?;
            Ok(mv_with_multiplicity(&qs, &[1, 1, 1, 1])?.to_string())
        })(),
    );
    r.push(
        "mixed volume of the listed exponent matrices",
        25,
        (|| Ok(mixed_volume(&fixtures::sec62_polytopes()?)?.to_string()))(),
    );
    r.timed("generic_count", 25, secs(120), || {
        generic_count_with_budget(&multifreq_family(2)?, opts.seed, opts.budget).map(count_str)
    });
    r
}

fn rem62() -> Rows {
    let mut r = Rows::new("rem6.2");
    let ord = MonomialOrder::deglex();
    r.timed("normalized volume of the unmixed polytope", 33, secs(10), || {
        let fam = multifreq_family(2)?.unmixed("s")?;
        let q = leading_polytopes(&fam, &ord)?;
        Ok(normalized_volume(&q[0]).to_string())
    });
    r.push(
        "is_khovanskii (13 generators)",
        Verdict::Certified,
        (|| {
            Ok(is_khovanskii(&multifreq_family(2)?.unmixed("s")?, &ord)?
                .verdict
                .to_string())
        })(),
    );
    r
}

fn lemma53(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("lemma5.3");
    for n in ns(opts, &[2, 3, 4]) {
        r.timed(
            format!("toric ideal equals binomials n={n}"),
            true,
            secs(30),
            || {
                let map = trapezoid_map(n)?;
                let gb = toric_ideal_with_budget(&map, &MonomialOrder::deglex(), opts.budget)?;
                let listed = lemma53_generators(n)?.to_ideal();
                Ok(ideals_equal(&gb.to_ideal(), &listed, &MonomialOrder::degrevlex())?.to_string())
            },
        );
        r.push(
            format!("binomials pass the S-pair test n={n}"),
            true,
            (|| {
                Ok(is_groebner(&lemma53_generators(n)?.polynomials(), &MonomialOrder::deglex())?.to_string())
            })(),
        );
    }
    r
}

/// `h_0 = 1`, `h_{2k-1} = u r^{k-1}`, `h_{2k} = v r^{k-1}` with `r = u² + v²`.
fn scaled_h(ring: &std::sync::Arc<Ring>, i: usize) -> Result<Polynomial> {
    let text = match i {
        0 => "s".to_string(),
        i if i % 2 == 1 => format!("s*u*(u^2+v^2)^{}", (i - 1) / 2),
        i => format!("s*v*(u^2+v^2)^{}", i / 2 - 1),
    };
    Polynomial::parse(ring, &text)
}

fn lemma54(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("lemma5.4");
    for n in ns(opts, &[2, 3, 4]) {
        let out = (|| -> Result<String> {
            let fam = oscillator_family(n)?;
            let g = fam.scaled(&MonomialOrder::deglex())?;
            let ring = g.ring().clone();
            let h: Vec<Polynomial> = (0..=2 * n).map(|i| scaled_h(&ring, i)).collect::<Result<_>>()?;
            for m in 3..=2 * n {
                let sub = &(&h[0] * &h[0]) * &h[m] - &(&(&h[1] * &h[1]) * &h[m - 2]);
                let k = m / 2;
                let expected = if m % 2 == 0 {
                    format!("s^3*v^3*(u^2+v^2)^{}", k - 2)
                } else {
                    format!("s^3*v^2*u*(u^2+v^2)^{}", k - 1)
                };
                if sub != Polynomial::parse(&ring, &expected)? {
                    return Ok(format!("g_{m}: unexpected intermediate {sub}"));
                }
                let s = subduct(&sub, &g)?;
                if !s.is_zero() || s.steps.len() != 1 {
                    return Ok(format!(
                        "g_{m}: {} steps, remainder {}",
                        s.steps.len(),
                        s.remainder
                    ));
                }
            }
            Ok("all zero in one step".to_string())
        })();
        r.push(format!("g_3..g_{} for n={n}", 2 * n), "all zero in one step", out);
    }
    r
}

fn ex211(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("ex2.11");
    let fam = fixtures::ex211_family();
    r.push(
        "is_khovanskii",
        Verdict::Refuted,
        fam.as_ref()
            .map_err(clone_err)
            .and_then(|f| Ok(is_khovanskii(f, &MonomialOrder::deglex())?.verdict.to_string())),
    );
    r.push(
        "generic_count",
        6,
        fam.as_ref()
            .map_err(clone_err)
            .and_then(|f| generic_count_with_budget(f, opts.seed, opts.budget).map(count_str)),
    );
    r.push(
        "torus_count of the leading-monomial system",
        2,
        (|| {
            let lead = BlockFamily::parse(&["x", "y"], &[&["x^2", "x*y", "y^2", "y^3"]], &[2])?;
            let sys = generic_system(&lead, opts.seed)?;
            torus_count_with_budget(&sys, opts.budget).map(count_str)
        })(),
    );
    r
}

fn clone_err(e: &crate::Error) -> crate::Error {
    crate::Error::InvalidParameter(e.to_string())
}

fn ex213() -> Rows {
    let mut r = Rows::new("ex2.13");
    for (name, ord) in [
        ("lex", MonomialOrder::lex()),
        ("deglex", MonomialOrder::deglex()),
        ("degrevlex", MonomialOrder::degrevlex()),
    ] {
        r.push(
            format!("semimixed under {name}"),
            Verdict::Refuted,
            (|| {
                Ok(is_khovanskii(&fixtures::ex213_semimixed()?, &ord)?
                    .verdict
                    .to_string())
            })(),
        );
        r.push(
            format!("unmixed under {name}"),
            Verdict::Certified,
            (|| {
                Ok(is_khovanskii(&fixtures::ex213_unmixed()?, &ord)?
                    .verdict
                    .to_string())
            })(),
        );
    }
    r
}

fn ex33(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("ex3.3");
    r.push(
        "toric ideal equals the three binomials",
        true,
        (|| {
            let (map, gens) = fixtures::ex33_map()?;
            let gb = toric_ideal_with_budget(&map, &MonomialOrder::degrevlex(), opts.budget)?;
            let listed = Ideal::new(&map.target_ring(), gens)?;
            Ok(ideals_equal(&gb.to_ideal(), &listed, &MonomialOrder::degrevlex())?.to_string())
        })(),
    );
    r
}

fn ex36(_opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("ex3.6");
    let data = fixtures::ex36_data();
    let (order, first, second, witness) = match data {
        Ok(FixtureData::GroebnerUnion {
            order,
            first,
            second,
            witness,
        }) => (order, first, second, witness),
        Ok(_) => unreachable!("ex3.6 fixture shape"),
        Err(e) => {
            r.push("fixture", "built", Err(e));
            return r;
        }
    };
    r.push(
        "each part is a Groebner basis",
        true,
        (|| Ok((is_groebner(&first, &order)? && is_groebner(&second, &order)?).to_string()))(),
    );
    let union: Vec<Polynomial> = first.iter().chain(second.iter()).cloned().collect();
    r.push(
        "witness normal form against the union",
        "nonzero",
        reduce_by(&witness, &union, &order).map(|p| if p.is_zero() { "zero" } else { "nonzero" }.to_string()),
    );
    r.push(
        "witness lies in J + L",
        true,
        (|| {
            let ideal = Ideal::new(witness.ring(), union.clone())?;
            let gb = crate::groebner::buchberger(&ideal, &order)?;
            gb.contains(&witness).map(|b| b.to_string())
        })(),
    );
    r
}

/// Random map `(h, x_1..x_a) ↦ (h, h x^{e_1}, ..., h x^{e_c})`.
fn random_factor(rng: &mut ChaCha8Rng, hom: &str, stem: &str, target: &str) -> Result<MonomialMap> {
    let a = rng.gen_range(1..=3usize);
    let c = rng.gen_range(2..=4usize);
    let mut source = vec![hom.to_string()];
    source.extend((1..=a).map(|i| format!("{stem}{i}")));
    let mut rows = vec![vec![1i64; c + 1]];
    for _ in 0..a {
        let mut row = vec![0i64];
        row.extend((0..c).map(|_| rng.gen_range(0..=4)));
        rows.push(row);
    }
    let targets = (0..=c).map(|j| format!("{target}{j}")).collect();
    MonomialMap::with_targets(source, targets, rows)?.with_homogenizing(&[hom])
}

/// The fiber product of two factors over their shared homogenizing row.
pub fn fiber_product_map(a: &MonomialMap, b: &MonomialMap) -> Result<MonomialMap> {
    let (ha, hb) = (a.homogenizing[0], b.homogenizing[0]);
    let mut source = a.source_vars.clone();
    let b_rows: Vec<usize> = (0..b.nsource()).filter(|&i| i != hb).collect();
    source.extend(b_rows.iter().map(|&i| b.source_vars[i].clone()));
    let mut targets = a.target_vars.clone();
    // the first pure homogenizing column of `b` is identified with that of `a`
    let pure = |j: usize| (0..b.nsource()).all(|i| b.exponent_matrix[i][j] == i64::from(i == hb));
    let shared = (0..b.ntarget())
        .find(|&j| pure(j))
        .ok_or_else(|| crate::Error::InvalidParameter("factor has no pure homogenizing column".into()))?;
    let b_cols: Vec<usize> = (0..b.ntarget()).filter(|&j| j != shared).collect();
    targets.extend(b_cols.iter().map(|&j| b.target_vars[j].clone()));
    let width = a.ntarget() + b_cols.len();
    let mut rows = Vec::new();
    for (i, row) in a.exponent_matrix.iter().enumerate() {
        let mut r = row.clone();
        r.extend(
            b_cols
                .iter()
                .map(|&j| if i == ha { b.exponent_matrix[hb][j] } else { 0 }),
        );
        rows.push(r);
    }
    for &i in &b_rows {
        let mut r = vec![0i64; a.ntarget()];
        r.extend(b_cols.iter().map(|&j| b.exponent_matrix[i][j]));
        rows.push(r);
    }
    debug_assert!(rows.iter().all(|r| r.len() == width));
    let hname = a.source_vars[ha].clone();
    MonomialMap::with_targets(source, targets, rows)?.with_homogenizing(&[hname.as_str()])
}

/// Compares the fiber-product generators with the direct toric ideal for one
/// random pair of factors.
pub fn fiber_product_trial(seed: u64, budget: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_factor(&mut rng, "s", "x", "z")?;
    let b = random_factor(&mut rng, "t", "y", "w")?;
    let ord = MonomialOrder::degrevlex();
    let ia = toric_ideal_with_budget(&a, &ord, budget)?.to_ideal();
    let ib = toric_ideal_with_budget(&b, &ord, budget)?.to_ideal();
    let joined = fiber_product_generators(&[
        Factor {
            ideal: &ia,
            homogenizing: "z0",
        },
        Factor {
            ideal: &ib,
            homogenizing: "w0",
        },
    ])?;
    let direct = toric_ideal_with_budget(&fiber_product_map(&a, &b)?, &ord, budget)?.to_ideal();
    ideals_equal(&joined, &direct, &ord)
}

fn thm38(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("thm3.8");
    r.timed("20 random factor pairs", 20, secs(60), || {
        let mut ok = 0;
        for t in 0..20u64 {
            if fiber_product_trial(opts.seed.wrapping_add(t), opts.budget)? {
                ok += 1;
            }
        }
        Ok(ok.to_string())
    });
    r
}

fn lower(kind: LowerBoundKind, budget: u64) -> Result<String> {
    let sys: PolySystem = lower_bound_system(kind, &rat(LOWER_BOUND_PARAMETER))?;
    system_count_with_budget(&sys, budget).map(count_str)
}

fn sec51(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("sec5.1");
    for n in ns(opts, &[2, 3, 4]) {
        r.push(
            format!("quotient dimension n={n}"),
            4 * n - 3,
            lower(LowerBoundKind::Single(n), opts.budget),
        );
    }
    r
}

fn sec61(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("sec6.1");
    for m in ns(opts, &[1, 2, 3]) {
        let budget = if m >= 3 {
            opts.budget.max(50_000_000)
        } else {
            opts.budget
        };
        r.push(
            format!("quotient dimension M={m}"),
            5usize.pow(m as u32),
            lower(LowerBoundKind::Multi(m), budget),
        );
    }
    r
}

fn lemma41(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("lemma4.1");
    for k in 0..=10u32 {
        let expected = Rational::new(
            BigInt::from(binomial(2 * k as u64 + 1, k as u64)),
            BigInt::from(2).pow(2 * k + 1),
        );
        r.push(
            format!("coefficient k={k}"),
            crate::polyring::format_rational(&expected),
            Ok(crate::polyring::format_rational(&fourier_coefficient(k))),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0f64;
    let mut err = None;
    for k in 0..=4u32 {
        for _ in 0..5 {
            let re = ratio(rng.gen_range(-8..=8), rng.gen_range(8..=16));
            let im = ratio(rng.gen_range(-8..=8), rng.gen_range(8..=16));
            match fourier_quadrature_check(k, (re, im), 64) {
                Ok(q) => worst = worst.max(q.deviation),
                Err(e) => err = Some(e),
            }
        }
    }
    r.push(
        "quadrature deviation below 1e-9 (k <= 4, 5 points each)",
        true,
        match err {
            Some(e) => Err(e),
            None => Ok((worst < 1e-9).to_string()),
        },
    );
    r
}

/// `conv{(0,0), (2k-1, 0), (2k-2, 1)}` for `k = 1..n`.
pub fn trapezoid_polytope(n: usize) -> Result<LatticePolytope> {
    let mut pts = vec![vec![0i64, 0]];
    for k in 1..=n as i64 {
        pts.push(vec![2 * k - 1, 0]);
        pts.push(vec![2 * k - 2, 1]);
    }
    LatticePolytope::new(2, pts)
}

fn trapezoid(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("trapezoid");
    let list: Vec<usize> = match opts.n {
        Some(n) => vec![n],
        None => (2..=10).collect(),
    };
    for n in list {
        r.push(
            format!("normalized volume n={n}"),
            4 * n - 3,
            trapezoid_polytope(n).map(|p| normalized_volume(&p).to_string()),
        );
    }
    r
}

fn bkk(opts: &VerifyOptions) -> Rows {
    let mut r = Rows::new("bkk");
    let sys = crate::resonator::HBConfig::single(2, opts.seed)
        .generate()
        .map(|(s, _)| s);
    r.push(
        "bkk_bound of the cubic resonator",
        9,
        sys.as_ref()
            .map_err(clone_err)
            .and_then(|s| crate::counting::bkk_bound(s).map(|b| b.to_string())),
    );
    r.push(
        "quotient dimension of the cubic resonator",
        5,
        sys.as_ref()
            .map_err(clone_err)
            .and_then(|s| system_count_with_budget(s, opts.budget).map(count_str)),
    );
    r
}

/// Table grouped by claim, padded for a terminal.
pub fn render_table(rows: &[ClaimRow]) -> String {
    let descr: HashMap<&str, &str> = CLAIMS.iter().copied().collect();
    let wc = rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
    let we = rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
    let mut out = String::new();
    let mut last = "";
    for row in rows {
        if row.claim != last {
            last = &row.claim;
            out.push_str(&format!("{}: {}\n", row.claim, descr.get(last).unwrap_or(&"")));
        }
        out.push_str(&format!(
            "  {}  {:<wc$}  expected {:<we$}  got {}\n",
            if row.passed { "PASS" } else { "FAIL" },
            row.check,
            row.expected,
            row.computed,
        ));
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", rows.len()));
    out
}
