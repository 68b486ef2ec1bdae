//! Root counts: BKK bounds, Khovanskii bounds and exact generic counts.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::groebner::{
    degrevlex_basis_with_budget, quotient_dimension, standard_monomials, Count, GroebnerBasis, Ideal,
    DEFAULT_BUDGET,
};
use crate::khovanskii::{
    decoupled_check_with, is_khovanskii_with, rank_of, BlockFamily, CertifyOptions, KhovanskiiCertificate,
    Verdict,
};
use crate::polyring::{rat, Monomial, MonomialOrder, PolySystem, Polynomial, Rational};
use crate::polytope::{mixed_volume, mv_with_multiplicity, newton_polytope, LatticePolytope};
use crate::resonator::COEFF_RANGE;
use crate::toric::{lattice_index, MonomialMap};
use crate::{Error, Result};

fn require_square(sys: &PolySystem) -> Result<()> {
    if !sys.is_square() {
        return Err(Error::DimensionMismatch {
            expected: sys.ring().nvars(),
            found: sys.len(),
        });
    }
    Ok(())
}

fn require_square_family(fam: &BlockFamily) -> Result<()> {
    if !fam.is_square() {
        return Err(Error::DimensionMismatch {
            expected: fam.ring().nvars(),
            found: fam.num_equations(),
        });
    }
    Ok(())
}

/// Mixed volume of the Newton polytopes of a square system.
pub fn bkk_bound(sys: &PolySystem) -> Result<u128> {
    require_square(sys)?;
    let polys = sys
        .equations()
        .iter()
        .map(|p| newton_polytope(p, &[]))
        .collect::<Result<Vec<_>>>()?;
    mixed_volume(&polys)
}

/// Leading-term polytopes `Q_j` of each block.
pub fn leading_polytopes(fam: &BlockFamily, ord: &MonomialOrder) -> Result<Vec<LatticePolytope>> {
    let n = fam.ring().nvars();
    fam.blocks()
        .iter()
        .map(|b| {
            let pts = b
                .iter()
                .map(|h| {
                    h.leading_term(ord)
                        .map(|(_, m)| m.exponents().iter().map(|&e| e as i64).collect())
                })
                .collect::<Result<Vec<Vec<i64>>>>()?;
            LatticePolytope::new(n, pts)
        })
        .collect()
}

/// Monomial map `φ_in` sending target `z_{j,l}` to `s_j LT(h_{j,l})`.
pub fn leading_map(fam: &BlockFamily, ord: &MonomialOrder) -> Result<MonomialMap> {
    let g = fam.scaled(ord)?;
    g.leading_map(fam.num_blocks())
}

/// Result of [`khovanskii_bound`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhovanskiiBound {
    /// `MV(Q_1[k_1], ..., Q_r[k_r])` divided by the lattice index; `None`
    /// when the family is not certified.
    pub bound: Option<u128>,
    pub mixed_volume: u128,
    pub lattice_index: Count,
    /// True when the lattice index is not 1 and the mixed volume was divided.
    pub index_flag: bool,
    pub verdict: Verdict,
    pub certificate: KhovanskiiCertificate,
}

/// Certifies the family and, if certified, returns the mixed-volume bound.
pub fn khovanskii_bound(
    fam: &BlockFamily,
    ord: &MonomialOrder,
    partition: Option<&[Vec<usize>]>,
) -> Result<KhovanskiiBound> {
    khovanskii_bound_with(fam, ord, partition, &CertifyOptions::default())
}

pub fn khovanskii_bound_with(
    fam: &BlockFamily,
    ord: &MonomialOrder,
    partition: Option<&[Vec<usize>]>,
    opts: &CertifyOptions,
) -> Result<KhovanskiiBound> {
    require_square_family(fam)?;
    let certificate = match partition {
        Some(p) => decoupled_check_with(fam, p, ord, opts)?,
        None => is_khovanskii_with(fam, ord, opts)?,
    };
    let qs = leading_polytopes(fam, ord)?;
    let ks: Vec<usize> = fam.sizes().to_vec();
    let mv = mv_with_multiplicity(&qs, &ks)?;
    let index = lattice_index(&leading_map(fam, ord)?);
    let divided = match index {
        Count::Finite(d) if d > 1 => mv / d as u128,
        _ => mv,
    };
    Ok(KhovanskiiBound {
        bound: (certificate.verdict == Verdict::Certified).then_some(divided),
        mixed_volume: mv,
        lattice_index: index,
        index_flag: index != Count::Finite(1),
        verdict: certificate.verdict,
        certificate,
    })
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        if x != 0 {
            return rat(x);
        }
    }
}

/// `k_j` random linear combinations of the elements of each block.
pub fn generic_system(fam: &BlockFamily, seed: u64) -> Result<PolySystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = fam.ring();
    let mut eqs = Vec::new();
    for (block, &k) in fam.blocks().iter().zip(fam.sizes()) {
        for _ in 0..k {
            let mut f = Polynomial::zero(ring);
            for h in block {
                f = f + h.scale(&random_nonzero(&mut rng));
            }
            eqs.push(f);
        }
    }
    PolySystem::new(ring, eqs)
}

/// Seed used for the confirming run of [`generic_count`].
pub fn second_seed(seed: u64) -> u64 {
    seed ^ 0x9e37_79b9_7f4a_7c15
}

/// Number of solutions, with multiplicity, of a generic system from the family.
///
/// Runs with `seed` and with [`second_seed`]; the two counts must agree.
pub fn generic_count(fam: &BlockFamily, seed: u64) -> Result<Count> {
    generic_count_with_budget(fam, seed, DEFAULT_BUDGET)
}

pub fn generic_count_with_budget(fam: &BlockFamily, seed: u64, budget: u64) -> Result<Count> {
    require_square_family(fam)?;
    let seeds = [seed, second_seed(seed)];
    let mut counts = Vec::new();
    for s in seeds {
        let sys = generic_system(fam, s)?;
        counts.push(system_count_with_budget(&sys, budget)?);
    }
    if counts[0] != counts[1] {
        return Err(Error::GenericityFailure {
            first: counts[0].to_string(),
            second: counts[1].to_string(),
            seed_a: seeds[0],
            seed_b: seeds[1],
        });
    }
    Ok(counts[0])
}

/// Quotient dimension of the ideal of a system (degree reverse lexicographic basis).
pub fn system_count(sys: &PolySystem) -> Result<Count> {
    system_count_with_budget(sys, DEFAULT_BUDGET)
}

pub fn system_count_with_budget(sys: &PolySystem, budget: u64) -> Result<Count> {
    let ideal = Ideal::new(sys.ring(), sys.equations().to_vec())?;
    let gb = degrevlex_basis_with_budget(&ideal, budget)?;
    Ok(quotient_dimension(&gb))
}

/// Solutions with all coordinates nonzero, with multiplicity.
pub fn torus_count(sys: &PolySystem) -> Result<Count> {
    torus_count_with_budget(sys, DEFAULT_BUDGET)
}

pub fn torus_count_with_budget(sys: &PolySystem, budget: u64) -> Result<Count> {
    require_square(sys)?;
    let ring = sys.ring();
    let gb = degrevlex_basis_with_budget(&Ideal::new(ring, sys.equations().to_vec())?, budget)?;
    match standard_monomials(&gb.leading_monomials(), ring.nvars()) {
        Some(basis) => torus_part(&gb, &basis),
        None => rabinowitsch_count(sys, budget),
    }
}

// Rank of the eventual image of multiplication by x_1 * ... * x_n on R/I,
// applied one variable at a time.
fn torus_part(gb: &GroebnerBasis, basis: &[Monomial]) -> Result<Count> {
    let ring = gb.ring();
    let d = basis.len();
    if d == 0 {
        return Ok(Count::Finite(0));
    }
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mats = Vec::with_capacity(ring.nvars());
    for i in 0..ring.nvars() {
        let mut mat = vec![vec![Rational::zero(); d]; d];
        for (j, b) in basis.iter().enumerate() {
            let x = Monomial::var(ring.nvars(), i, 1);
            let nf = gb.normal_form(&Polynomial::monomial(ring, b.mul(&x), rat(1)))?;
            for (m, c) in nf.terms() {
                mat[index[m]][j] = c.clone();
            }
        }
        mats.push(mat);
    }
    if mats
        .iter()
        .all(|m| full_rank_mod_p(m) || row_basis(m.clone()).len() == d)
    {
        return Ok(Count::Finite(d as u64));
    }
    // columns of the identity span R/I; push the span through M until it stops shrinking
    let mut span: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { rat(1) } else { Rational::zero() })
                .collect()
        })
        .collect();
    loop {
        let image: Vec<Vec<Rational>> = span
            .iter()
            .map(|v| mats.iter().fold(v.clone(), |w, m| mat_vec(m, &w)))
            .collect();
        let next = row_basis(image);
        if next.len() == span.len() {
            return Ok(Count::Finite(next.len() as u64));
        }
        span = next;
    }
}

fn rabinowitsch_count(sys: &PolySystem, budget: u64) -> Result<Count> {
    let ring = sys.ring();
    let ext = ring.extended(&[ring.fresh_name("t")])?;
    let mut gens = sys
        .equations()
        .iter()
        .map(|f| f.embed(&ext))
        .collect::<Result<Vec<_>>>()?;
    let mut inv = Polynomial::monomial(&ext, Monomial::new(vec![1; ext.nvars()]), rat(1));
    inv.add_term(Monomial::one(ext.nvars()), rat(-1));
    gens.push(inv);
    let gb = degrevlex_basis_with_budget(&Ideal::new(&ext, gens)?, budget)?;
    Ok(quotient_dimension(&gb))
}

const MODULUS: u64 = (1 << 61) - 1;

fn reduce_mod(c: &Rational) -> Option<u64> {
    let p = BigInt::from(MODULUS);
    let den = c.denom().mod_floor(&p).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = c.numer().mod_floor(&p).to_u64()?;
    Some(mul_mod(num, pow_mod(den, MODULUS - 2)))
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

// Full rank modulo a prime implies full rank over the rationals.
fn full_rank_mod_p(m: &[Vec<Rational>]) -> bool {
    let Some(mut a) = m
        .iter()
        .map(|row| row.iter().map(reduce_mod).collect::<Option<Vec<u64>>>())
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let n = a.len();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return false;
        };
        a.swap(c, p);
        let inv = pow_mod(a[c][c], MODULUS - 2);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let f = mul_mod(a[r][c], inv);
            for k in c..n {
                let t = mul_mod(f, a[c][k]);
                a[r][k] = (a[r][k] + MODULUS - t) % MODULUS;
            }
        }
    }
    true
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

// Reduced row echelon basis of the row span.
fn row_basis(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for k in c..cols {
            m[rank][k] /= &piv;
        }
        for r in 0..rows {
            if r == rank || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..cols {
                let t = &f * &m[rank][k];
                m[r][k] -= t;
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Multisets of size `k` drawn from `0..n`, as sorted index lists.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn product_count(fam: &BlockFamily, alpha: &[usize]) -> u128 {
    fam.blocks()
        .iter()
        .zip(alpha)
        .map(|(b, &a)| binomial((b.len() + a) as u128 - 1, a as u128))
        .product()
}

fn check_alpha(fam: &BlockFamily, alpha: &[usize], budget: u64) -> Result<()> {
    if alpha.len() != fam.num_blocks() {
        return Err(Error::DimensionMismatch {
            expected: fam.num_blocks(),
            found: alpha.len(),
        });
    }
    if product_count(fam, alpha) > budget as u128 {
        return Err(Error::ResourceLimit { budget });
    }
    Ok(())
}

/// Every product choosing `α_j` elements (with repetition) from block `j`.
fn block_products<T: Clone>(items: &[Vec<T>], alpha: &[usize], one: T, mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut acc = vec![one];
    for (block, &a) in items.iter().zip(alpha) {
        let mut next = Vec::new();
        for ms in multisets(block.len(), a) {
            let mut prod: Option<T> = None;
            for &i in &ms {
                prod = Some(match prod {
                    None => block[i].clone(),
                    Some(p) => mul(&p, &block[i]),
                });
            }
            for base in &acc {
                next.push(match &prod {
                    None => base.clone(),
                    Some(p) => mul(base, p),
                });
            }
        }
        acc = next;
    }
    acc
}

/// Default cap on the number of products formed by the Hilbert functions.
pub const HILBERT_BUDGET: u64 = 50_000;

/// `dim V_1^{α_1} ⋯ V_r^{α_r}`: the Hilbert function of the subalgebra.
pub fn hilbert_function(fam: &BlockFamily, alpha: &[usize]) -> Result<u64> {
    hilbert_function_with_budget(fam, alpha, HILBERT_BUDGET)
}

pub fn hilbert_function_with_budget(fam: &BlockFamily, alpha: &[usize], budget: u64) -> Result<u64> {
    check_alpha(fam, alpha, budget)?;
    let prods = block_products(fam.blocks(), alpha, Polynomial::one(fam.ring()), |a, b| a * b);
    Ok(rank_of(&prods) as u64)
}

/// Hilbert function of the algebra generated by the leading monomials.
pub fn hilbert_function_initial(fam: &BlockFamily, ord: &MonomialOrder, alpha: &[usize]) -> Result<u64> {
    hilbert_function_initial_with_budget(fam, ord, alpha, HILBERT_BUDGET)
}

pub fn hilbert_function_initial_with_budget(
    fam: &BlockFamily,
    ord: &MonomialOrder,
    alpha: &[usize],
    budget: u64,
) -> Result<u64> {
    check_alpha(fam, alpha, budget)?;
    let lts: Vec<Vec<Monomial>> = fam
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|h| h.leading_term(ord).map(|(_, m)| m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let prods = block_products(&lts, alpha, Monomial::one(fam.ring().nvars()), |a, b| a.mul(b));
    Ok(prods.into_iter().collect::<BTreeSet<_>>().len() as u64)
}

/// Evidence about generic injectivity of `φ` and `φ_in`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub seed: u64,
    /// Fiber of `φ` through a random point, one entry per trial.
    pub fiber_sizes: Vec<Count>,
    /// Exact degree of `φ_in` (index of the leading-term lattice).
    pub lattice_index: Count,
    /// True when the lattice index is not 1.
    pub flagged: bool,
}

impl InjectivityReport {
    pub fn all_singletons(&self) -> bool {
        self.fiber_sizes.iter().all(|c| *c == Count::Finite(1))
    }
}

/// Counts the fiber `φ(x) = φ(x₀)` through random rational points `x₀`.
pub fn injectivity_probe(
    fam: &BlockFamily,
    ord: &MonomialOrder,
    seed: u64,
    trials: usize,
) -> Result<InjectivityReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = fam.ring();
    let mut sizes = Vec::new();
    for _ in 0..trials {
        let x0: Vec<Rational> = (0..ring.nvars())
            .map(|_| Rational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=7).into()))
            .collect();
        let mut eqs = Vec::new();
        for block in fam.blocks() {
            let vals = block
                .iter()
                .map(|h| h.evaluate(&x0))
                .collect::<Result<Vec<_>>>()?;
            let pivot = block
                .iter()
                .zip(&vals)
                .position(|(h, v)| h.is_constant() && !v.is_zero())
                .or_else(|| vals.iter().position(|v| !v.is_zero()));
            let Some(l0) = pivot else { continue };
            for (l, h) in block.iter().enumerate() {
                if l != l0 {
                    let e = &h.scale(&vals[l0]) - &block[l0].scale(&vals[l]);
                    if !e.is_zero() {
                        eqs.push(e);
                    }
                }
            }
        }
        let ideal = Ideal::new(ring, eqs)?;
        let gb = degrevlex_basis_with_budget(&ideal, DEFAULT_BUDGET)?;
        sizes.push(quotient_dimension(&gb));
    }
    let index = lattice_index(&leading_map(fam, ord)?);
    Ok(InjectivityReport {
        seed,
        fiber_sizes: sizes,
        lattice_index: index,
        flagged: index != Count::Finite(1),
    })
}

/// End-to-end comparison of the bounds and counts for one family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub schema: u32,
    pub system: String,
    pub order: MonomialOrder,
    pub seed: u64,
    pub block_sizes: Vec<usize>,
    pub bkk_bound: u128,
    /// `None` when the family is not certified.
    pub khovanskii_bound: Option<u128>,
    pub mixed_multiplicity: u128,
    pub lattice_index: Count,
    pub generic_count: Count,
    pub torus_count: Count,
    pub verdict: Verdict,
    /// Counts are quotient dimensions, so they include multiplicities.
    pub with_multiplicity: bool,
    pub agreement: bool,
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system:            {}", self.system)?;
        writeln!(f, "seed:              {}", self.seed)?;
        writeln!(f, "block sizes:       {:?}", self.block_sizes)?;
        writeln!(f, "bkk bound:         {}", self.bkk_bound)?;
        match self.khovanskii_bound {
            Some(b) => writeln!(f, "khovanskii bound:  {b}")?,
            None => writeln!(f, "khovanskii bound:  UNCERTIFIED")?,
        }
        writeln!(f, "mixed volume:      {}", self.mixed_multiplicity)?;
        writeln!(f, "lattice index:     {}", self.lattice_index)?;
        writeln!(f, "generic count:     {} (with multiplicity)", self.generic_count)?;
        writeln!(f, "torus count:       {}", self.torus_count)?;
        writeln!(f, "certificate:       {}", self.verdict)?;
        write!(
            f,
            "agreement:         {}",
            if self.agreement { "yes" } else { "no" }
        )
    }
}

/// Runs every count on `fam` and checks that they line up.
pub fn count_report(
    fam: &BlockFamily,
    ord: &MonomialOrder,
    seed: u64,
    partition: Option<&[Vec<usize>]>,
    label: &str,
) -> Result<CountReport> {
    let kb = khovanskii_bound(fam, ord, partition)?;
    let generic = generic_count(fam, seed)?;
    let sys = generic_system(fam, seed)?;
    let bkk = bkk_bound(&sys)?;
    let torus = torus_count(&sys)?;
    let agreement = match (kb.bound, generic) {
        (Some(b), Count::Finite(g)) => b == g as u128 && b <= bkk,
        _ => false,
    };
    Ok(CountReport {
        schema: 1,
        system: label.to_string(),
        order: ord.clone(),
        seed,
        block_sizes: fam.sizes().to_vec(),
        bkk_bound: bkk,
        khovanskii_bound: kb.bound,
        mixed_multiplicity: kb.mixed_volume,
        lattice_index: kb.lattice_index,
        generic_count: generic,
        torus_count: torus,
        verdict: kb.verdict,
        with_multiplicity: true,
        agreement,
    })
}

/// Unmixed family `{1, u, v, u r², v r², ..., u r^{2n−2}, v r^{2n−2}}`.
pub fn oscillator_family(n: usize) -> Result<BlockFamily> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let mut elems = vec!["1".to_string(), "u".into(), "v".into()];
    for k in 1..n {
        elems.push(format!("u*(u^2+v^2)^{k}"));
        elems.push(format!("v*(u^2+v^2)^{k}"));
    }
    let refs: Vec<&str> = elems.iter().map(String::as_str).collect();
    BlockFamily::parse(&["u", "v"], &[&refs], &[2])
}

/// `N` variable-disjoint copies of the oscillator family as one block, with
/// the partition separating the copies (the constant is shared).
pub fn coupled_family(nres: usize, n: usize) -> Result<(BlockFamily, Vec<Vec<usize>>)> {
    if nres == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let vars: Vec<String> = (1..=nres)
        .flat_map(|i| [format!("u{i}"), format!("v{i}")])
        .collect();
    let mut elems = vec!["1".to_string()];
    let mut partition = Vec::new();
    for i in 1..=nres {
        let mut part = vec![0];
        let mut push = |s: String| {
            part.push(elems.len());
            elems.push(s);
        };
        push(format!("u{i}"));
        push(format!("v{i}"));
        for k in 1..n {
            push(format!("u{i}*(u{i}^2+v{i}^2)^{k}"));
            push(format!("v{i}*(u{i}^2+v{i}^2)^{k}"));
        }
        partition.push(part);
    }
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    let e: Vec<&str> = elems.iter().map(String::as_str).collect();
    let fam = BlockFamily::parse(&v, &[&e], &[2 * nres])?;
    Ok((fam, partition))
}

/// The semimixed family of one cubic resonator with `M` harmonics: block
/// `(k, u)` is `{1, u_k, v_k, u_k r_k², u_k r_j² (j ≠ k)}` and block `(k, v)`
/// the same with `v_k` multiplying the quadratic terms.
pub fn multifreq_family(m: usize) -> Result<BlockFamily> {
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    let vars: Vec<String> = (1..=m).flat_map(|i| [format!("u{i}"), format!("v{i}")]).collect();
    let r = |j: usize| format!("(u{j}^2+v{j}^2)");
    let mut blocks: Vec<Vec<String>> = Vec::new();
    for k in 1..=m {
        for w in [format!("u{k}"), format!("v{k}")] {
            let mut b = vec![
                "1".to_string(),
                format!("u{k}"),
                format!("v{k}"),
                format!("{w}*{}", r(k)),
            ];
            for j in (1..=m).filter(|&j| j != k) {
                b.push(format!("{w}*{}", r(j)));
            }
            blocks.push(b);
        }
    }
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    let bs: Vec<Vec<&str>> = blocks
        .iter()
        .map(|b| b.iter().map(String::as_str).collect())
        .collect();
    let refs: Vec<&[&str]> = bs.iter().map(Vec::as_slice).collect();
    BlockFamily::parse(&v, &refs, &vec![1; 2 * m])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_counts() {
        let fam = oscillator_family(2).unwrap();
        assert_eq!(generic_count(&fam, 0).unwrap(), Count::Finite(5));
        let kb = khovanskii_bound(&fam, &MonomialOrder::deglex(), None).unwrap();
        assert_eq!(kb.bound, Some(5));
        assert_eq!(kb.lattice_index, Count::Finite(1));
    }

    #[test]
    fn hilbert_small() {
        let fam = oscillator_family(2).unwrap();
        assert_eq!(hilbert_function(&fam, &[0]).unwrap(), 1);
        assert_eq!(hilbert_function(&fam, &[1]).unwrap(), 5);
        let ord = MonomialOrder::deglex();
        assert_eq!(
            hilbert_function(&fam, &[2]).unwrap(),
            hilbert_function_initial(&fam, &ord, &[2]).unwrap()
        );
    }

    #[test]
    fn torus_of_coordinate_system() {
        let ring = crate::polyring::Ring::new(["x", "y"]);
        let sys = PolySystem::new(&ring, vec![Polynomial::var(&ring, 0), Polynomial::var(&ring, 1)]).unwrap();
        assert_eq!(torus_count(&sys).unwrap(), Count::Finite(0));
        assert_eq!(system_count(&sys).unwrap(), Count::Finite(1));
    }

    #[test]
    fn torus_count_skips_boundary_roots() {
        let ring = crate::polyring::Ring::new(["x", "y"]);
        let cases = [
            (["x*y - x", "x*y - 2*y"], 1, 2),
            (["x^3 - 3*x^2", "y^2 - 4"], 2, 6),
            (["x^2*y - x^2", "y - x - 1"], 0, 3),
        ];
        for (eqs, torus, affine) in cases {
            let polys = eqs.iter().map(|e| Polynomial::parse(&ring, e).unwrap()).collect();
            let sys = PolySystem::new(&ring, polys).unwrap();
            assert_eq!(torus_count(&sys).unwrap(), Count::Finite(torus), "{eqs:?}");
            assert_eq!(system_count(&sys).unwrap(), Count::Finite(affine), "{eqs:?}");
        }
    }

    #[test]
    fn torus_count_with_boundary_component() {
        let ring = crate::polyring::Ring::new(["x", "y"]);
        let polys = ["x*y", "x^2*y - 2*x"]
            .iter()
            .map(|e| Polynomial::parse(&ring, e).unwrap())
            .collect();
        let sys = PolySystem::new(&ring, polys).unwrap();
        assert_eq!(system_count(&sys).unwrap(), Count::Infinite);
        assert_eq!(torus_count(&sys).unwrap(), Count::Finite(0));
    }

    #[test]
    fn families_have_expected_shape() {
        let (fam, part) = coupled_family(2, 2).unwrap();
        assert_eq!(fam.blocks()[0].len(), 9);
        assert_eq!(part, vec![vec![0, 1, 2, 3, 4], vec![0, 5, 6, 7, 8]]);
        let fam = multifreq_family(2).unwrap();
        assert_eq!(fam.num_blocks(), 4);
        assert!(fam.blocks().iter().all(|b| b.len() == 5));
    }
}
