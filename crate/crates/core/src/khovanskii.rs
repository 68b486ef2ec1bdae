//! Subduction and Khovanskii basis certification.
//!
//! A [`BlockFamily`] lists `r` blocks of polynomials `h_{j,l}` in variables
//! `x`. Scaling each element by its block label `s_j` gives generators of a
//! subalgebra of `Q[s, x]`. The scaled generators form a Khovanskii basis
//! exactly when every generator of the toric ideal of their leading
//! monomials, evaluated at the generators, subducts to zero; that is what
//! [`is_khovanskii`] checks.
//!
//! The order on the extended ring compares the `s` part by degree
//! lexicographic order first and breaks ties with the caller's order on
//! the `x` part.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::groebner::DEFAULT_BUDGET;
use crate::polyring::{
    format_monomial, format_rational, CompiledOrder, Monomial, MonomialOrder, PolyJson, Polynomial, Rational,
    Ring,
};
use crate::toric::{toric_ideal_with_budget, MonomialMap};
use crate::{Error, Result};

/// Blocks of polynomials with homogenizing labels and equation counts.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockFamily {
    ring: Arc<Ring>,
    blocks: Vec<Vec<Polynomial>>,
    labels: Vec<String>,
    sizes: Vec<usize>,
}

impl BlockFamily {
    pub fn new(
        ring: &Arc<Ring>,
        blocks: Vec<Vec<Polynomial>>,
        labels: Vec<String>,
        sizes: Vec<usize>,
    ) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameter(
                "a family needs at least one block".into(),
            ));
        }
        if labels.len() != blocks.len() || sizes.len() != blocks.len() {
            return Err(Error::DimensionMismatch {
                expected: blocks.len(),
                found: labels.len().min(sizes.len()),
            });
        }
        for l in &labels {
            if ring.index_of(l).is_some() {
                return Err(Error::VariableCollision(l.clone()));
            }
        }
        Ring::try_new(labels.iter().cloned())?;
        for (j, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidParameter(format!("block {j} is empty")));
            }
            if sizes[j] == 0 {
                return Err(Error::InvalidParameter(format!("block {j} has size 0")));
            }
            for p in b {
                if p.ring().vars() != ring.vars() {
                    return Err(Error::RingMismatch(format!("element of block {j}")));
                }
            }
            if rank_of(b) < b.len() {
                return Err(Error::InvalidParameter(format!(
                    "block {j} is not linearly independent"
                )));
            }
        }
        Ok(BlockFamily {
            ring: ring.clone(),
            blocks,
            labels,
            sizes,
        })
    }

    /// Parses blocks from text; labels default to `s1, s2, ...` (or `s`
    /// for a single block).
    pub fn parse(vars: &[&str], blocks: &[&[&str]], sizes: &[usize]) -> Result<Self> {
        let ring = Ring::try_new(vars.iter().copied())?;
        let parsed = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|t| Polynomial::parse(&ring, t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = default_labels(blocks.len());
        BlockFamily::new(&ring, parsed, labels, sizes.to_vec())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn blocks(&self) -> &[Vec<Polynomial>] {
        &self.blocks
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of equations.
    pub fn num_equations(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn is_square(&self) -> bool {
        self.num_equations() == self.ring.nvars()
    }

    /// All elements, block by block.
    pub fn elements(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(j, b)| b.iter().map(move |p| (j, p)))
    }

    /// Merges all blocks into one under a single label.
    pub fn unmixed(&self, label: &str) -> Result<BlockFamily> {
        let mut all: Vec<Polynomial> = Vec::new();
        for (_, p) in self.elements() {
            if !all.contains(p) {
                all.push(p.clone());
            }
        }
        // drop elements that are linear combinations of earlier ones
        let mut basis: Vec<Polynomial> = Vec::new();
        for p in all {
            basis.push(p);
            if rank_of(&basis) < basis.len() {
                basis.pop();
            }
        }
        BlockFamily::new(
            &self.ring,
            vec![basis],
            vec![label.to_string()],
            vec![self.num_equations()],
        )
    }

    /// Extended ring `[s_1..s_r, x...]`.
    pub fn extended_ring(&self) -> Arc<Ring> {
        Ring::new(
            self.labels
                .iter()
                .cloned()
                .chain(self.ring.vars().iter().cloned()),
        )
    }

    /// Block order on the extended ring.
    pub fn extended_order(&self, ord: &MonomialOrder) -> MonomialOrder {
        let r = self.labels.len();
        let n = self.ring.nvars();
        MonomialOrder::block(vec![
            ((0..r).collect(), MonomialOrder::deglex()),
            ((r..r + n).collect(), ord.clone()),
        ])
    }

    /// The scaled generators `s_j h` over the extended ring.
    pub fn scaled(&self, ord: &MonomialOrder) -> Result<ScaledGeneratorSet> {
        ord.validate(self.ring.nvars())?;
        let ext = self.extended_ring();
        let ext_order = self.extended_order(ord);
        let compiled = ext_order.compile(ext.nvars());
        let mut gens = Vec::new();
        let mut block_of = Vec::new();
        for (j, p) in self.elements() {
            let sj = Polynomial::var(&ext, j);
            gens.push(&sj * &p.embed(&ext)?);
            block_of.push(j);
        }
        let lts = gens
            .iter()
            .map(|g| g.leading_term_compiled(&compiled))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScaledGeneratorSet {
            ring: ext,
            order: ext_order,
            compiled,
            gens,
            lts,
            block_of,
        })
    }
}

/// `{"schema": 1, "vars": [...], "blocks": [["1", "u", ...], ...], "sizes": [...]}`
///
/// Block elements are polynomial strings; `labels` is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub vars: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub sizes: Vec<usize>,
}

fn schema_one() -> u32 {
    1
}

impl BlockFamily {
    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            schema: 1,
            vars: self.ring.vars().to_vec(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|p| p.to_string()).collect())
                .collect(),
            labels: self.labels.clone(),
            sizes: self.sizes.clone(),
        }
    }

    pub fn from_json(j: &FamilyJson) -> Result<Self> {
        let ring = Ring::try_new(j.vars.iter().cloned())?;
        let blocks = j
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|t| Polynomial::parse(&ring, t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = if j.labels.is_empty() {
            default_labels(blocks.len())
        } else {
            j.labels.clone()
        };
        BlockFamily::new(&ring, blocks, labels, j.sizes.clone())
    }

    /// Same blocks with new equation counts.
    pub fn with_sizes(&self, sizes: Vec<usize>) -> Result<Self> {
        BlockFamily::new(&self.ring, self.blocks.clone(), self.labels.clone(), sizes)
    }
}

fn default_labels(r: usize) -> Vec<String> {
    if r == 1 {
        vec!["s".to_string()]
    } else {
        (1..=r).map(|j| format!("s{j}")).collect()
    }
}

/// Rank of the coefficient matrix of a list of polynomials.
pub(crate) fn rank_of(polys: &[Polynomial]) -> usize {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in polys {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(m.clone()).or_insert(k);
        }
    }
    for p in polys {
        let mut row = vec![Rational::zero(); index.len()];
        for (m, c) in p.terms() {
            row[index[m]] = c.clone();
        }
        rows.push(row);
    }
    rational_rank(rows)
}

/// Row rank by Gaussian elimination over the rationals.
pub(crate) fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let prow = rows[rank].clone();
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..ncols {
                let t = &f * &prow[k];
                rows[i][k] -= t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Scaled generators together with their leading terms.
#[derive(Clone, Debug)]
pub struct ScaledGeneratorSet {
    ring: Arc<Ring>,
    order: MonomialOrder,
    compiled: CompiledOrder,
    gens: Vec<Polynomial>,
    lts: Vec<(Rational, Monomial)>,
    block_of: Vec<usize>,
}

impl ScaledGeneratorSet {
    /// Wraps arbitrary generators over `ring` under a degree compatible order.
    pub fn from_generators(ring: &Arc<Ring>, gens: Vec<Polynomial>, order: &MonomialOrder) -> Result<Self> {
        order.validate(ring.nvars())?;
        let compiled = order.compile(ring.nvars());
        let lts = gens
            .iter()
            .map(|g| g.leading_term_compiled(&compiled))
            .collect::<Result<Vec<_>>>()?;
        let block_of = vec![0; gens.len()];
        Ok(ScaledGeneratorSet {
            ring: ring.clone(),
            order: order.clone(),
            compiled,
            gens,
            lts,
            block_of,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.lts.iter().map(|(_, m)| m.clone()).collect()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    /// Monomial map sending `z_i` to the leading monomial of generator `i`.
    pub fn leading_map(&self, nlabels: usize) -> Result<MonomialMap> {
        let rows = (0..self.ring.nvars())
            .map(|v| self.lts.iter().map(|(_, m)| m.exponents()[v] as i64).collect())
            .collect();
        let mut map = MonomialMap::new(self.ring.vars().to_vec(), rows)?;
        map.homogenizing = (0..nlabels).collect();
        Ok(map)
    }

    /// `∏ g_i^{α_i}`, with powers cached.
    fn product(&self, alpha: &[u32], cache: &mut HashMap<(usize, u32), Polynomial>) -> Polynomial {
        let mut p = Polynomial::one(&self.ring);
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let g = cache.entry((i, a)).or_insert_with(|| self.gens[i].pow(a)).clone();
            p = &p * &g;
        }
        p
    }
}

/// One subduction step: `LT(f) = c · ∏ LT(g_i)^{α_i}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubductionStep {
    pub leading: Vec<u32>,
    pub coefficient: String,
    pub alpha: Vec<u32>,
}

/// Result of running subduction on one polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Subduction {
    pub remainder: Polynomial,
    pub steps: Vec<SubductionStep>,
    /// True when the step limit stopped the loop before it finished.
    pub truncated: bool,
}

impl Subduction {
    pub fn is_zero(&self) -> bool {
        self.remainder.is_zero() && !self.truncated
    }
}

/// Runs subduction of `f` against `g` until the remainder is constant or its
/// leading monomial is not a product of generator leading monomials.
pub fn subduct(f: &Polynomial, g: &ScaledGeneratorSet) -> Result<Subduction> {
    subduct_with_limit(f, g, DEFAULT_BUDGET)
}

pub fn subduct_with_limit(f: &Polynomial, g: &ScaledGeneratorSet, max_steps: u64) -> Result<Subduction> {
    if f.ring().vars() != g.ring.vars() {
        return Err(Error::RingMismatch("subduction across rings".into()));
    }
    let lt_monos = g.leading_monomials();
    let mut cache = HashMap::new();
    let mut f = f.clone();
    let mut steps = Vec::new();
    let mut prev: Option<Monomial> = None;
    loop {
        if f.is_constant() {
            break;
        }
        let (c, m) = f.leading_term_compiled(&g.compiled)?;
        if let Some(p) = &prev {
            if g.compiled.cmp_mono(&m, p) != std::cmp::Ordering::Less {
                return Err(Error::NonTermination { step: steps.len() });
            }
        }
        if steps.len() as u64 >= max_steps {
            return Ok(Subduction {
                remainder: f,
                steps,
                truncated: true,
            });
        }
        let Some(alpha) = monomial_decompose(&m, &lt_monos) else {
            break;
        };
        let prod = g.product(&alpha, &mut cache);
        let (lc_prod, lm_prod) = prod.leading_term_compiled(&g.compiled)?;
        debug_assert_eq!(lm_prod, m);
        let factor = &c / &lc_prod;
        f = &f - &prod.scale(&factor);
        steps.push(SubductionStep {
            leading: m.exponents().to_vec(),
            coefficient: format_rational(&factor),
            alpha,
        });
        prev = Some(m);
    }
    Ok(Subduction {
        remainder: f,
        steps,
        truncated: false,
    })
}

/// Lexicographically smallest `α ≥ 0` with `Σ α_i · lts_i = target`.
pub fn monomial_decompose(target: &Monomial, lts: &[Monomial]) -> Option<Vec<u32>> {
    let n = target.len();
    if lts.iter().any(|m| m.len() != n) {
        return None;
    }
    let mut alpha = vec![0u32; lts.len()];
    if target.is_one() {
        return Some(alpha);
    }
    // coordinates still reachable by generators i.. (suffix supports)
    let mut reach = vec![vec![false; n]; lts.len() + 1];
    for i in (0..lts.len()).rev() {
        let mut r = reach[i + 1].clone();
        for k in lts[i].support() {
            r[k] = true;
        }
        reach[i] = r;
    }
    let mut residual: Vec<u32> = target.exponents().to_vec();
    let mut failed: HashSet<(usize, Vec<u32>)> = HashSet::new();
    if search(0, &mut residual, lts, &reach, &mut alpha, &mut failed) {
        Some(alpha)
    } else {
        None
    }
}

fn search(
    i: usize,
    residual: &mut Vec<u32>,
    lts: &[Monomial],
    reach: &[Vec<bool>],
    alpha: &mut Vec<u32>,
    failed: &mut HashSet<(usize, Vec<u32>)>,
) -> bool {
    if residual.iter().all(|&e| e == 0) {
        return true;
    }
    if i == lts.len() {
        return false;
    }
    if residual.iter().zip(&reach[i]).any(|(&e, &r)| e > 0 && !r) {
        return false;
    }
    if failed.contains(&(i, residual.clone())) {
        return false;
    }
    let e = lts[i].exponents();
    let max = if lts[i].is_one() {
        0
    } else {
        residual
            .iter()
            .zip(e)
            .filter(|(_, &x)| x > 0)
            .map(|(&r, &x)| r / x)
            .min()
            .unwrap_or(0)
    };
    for a in 0..=max {
        for (r, &x) in residual.iter_mut().zip(e) {
            *r -= a * x;
        }
        alpha[i] = a;
        let ok = search(i + 1, residual, lts, reach, alpha, failed);
        for (r, &x) in residual.iter_mut().zip(e) {
            *r += a * x;
        }
        if ok {
            return true;
        }
    }
    alpha[i] = 0;
    failed.insert((i, residual.clone()));
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::Refuted => "REFUTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Log of subducting one toric generator evaluated at the scaled generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorTrace {
    /// Index into `toric_generators` (or into the part, for decoupled checks).
    pub generator: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<usize>,
    pub binomial: String,
    pub steps: Vec<SubductionStep>,
    pub remainder_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhovanskiiCertificate {
    pub verdict: Verdict,
    pub extended_vars: Vec<String>,
    pub order: MonomialOrder,
    pub leading_monomials: Vec<Vec<u32>>,
    pub toric_generators: Vec<PolyJson>,
    pub traces: Vec<GeneratorTrace>,
    pub witness: Option<PolyJson>,
    pub note: Option<String>,
}

impl KhovanskiiCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

impl fmt::Display for KhovanskiiCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::new(self.extended_vars.iter().cloned());
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "scaled generators: {}", self.leading_monomials.len())?;
        writeln!(f, "toric ideal generators: {}", self.toric_generators.len())?;
        for t in &self.traces {
            let part = t.part.map(|p| format!("part {p}, ")).unwrap_or_default();
            writeln!(
                f,
                "  [{part}#{}] {} -> {} in {} step(s)",
                t.generator,
                t.binomial,
                if t.remainder_zero { "0" } else { "nonzero" },
                t.steps.len()
            )?;
            for s in &t.steps {
                writeln!(
                    f,
                    "      LT {} = {} * prod LT(g)^{:?}",
                    format_monomial(&ring, &Monomial::new(s.leading.clone())),
                    s.coefficient,
                    s.alpha
                )?;
            }
        }
        if let Some(w) = &self.witness {
            if let Ok(p) = Polynomial::from_json(w) {
                writeln!(f, "witness remainder: {p}")?;
            }
        }
        if let Some(n) = &self.note {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Options for certification.
#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Keep subducting after the first failure.
    pub full_diagnostics: bool,
    /// Gröbner step budget for the toric ideal.
    pub budget: u64,
    /// Step limit per subduction; exceeding it makes the verdict inconclusive.
    pub max_subduction_steps: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            full_diagnostics: false,
            budget: DEFAULT_BUDGET,
            max_subduction_steps: 100_000,
        }
    }
}

/// Checks whether the scaled family is a Khovanskii basis for `ord`.
pub fn is_khovanskii(fam: &BlockFamily, ord: &MonomialOrder) -> Result<KhovanskiiCertificate> {
    is_khovanskii_with(fam, ord, &CertifyOptions::default())
}

pub fn is_khovanskii_with(
    fam: &BlockFamily,
    ord: &MonomialOrder,
    opts: &CertifyOptions,
) -> Result<KhovanskiiCertificate> {
    let g = fam.scaled(ord)?;
    let lms = g.leading_monomials();
    let mut cert = KhovanskiiCertificate {
        verdict: Verdict::Certified,
        extended_vars: g.ring.vars().to_vec(),
        order: g.order.clone(),
        leading_monomials: lms.iter().map(|m| m.exponents().to_vec()).collect(),
        toric_generators: Vec::new(),
        traces: Vec::new(),
        witness: None,
        note: None,
    };

    // repeated leading monomials make the leading-term map non-injective
    for i in 0..lms.len() {
        for j in 0..i {
            if lms[i] == lms[j] {
                let diff = &g.gens[j].scale(&g.lts[i].0) - &g.gens[i].scale(&g.lts[j].0);
                let sub = subduct_with_limit(&diff, &g, opts.max_subduction_steps)?;
                cert.verdict = Verdict::Refuted;
                cert.witness = Some(sub.remainder.to_json());
                cert.note = Some(format!(
                    "generators {j} and {i} share the leading monomial {}",
                    format_monomial(&g.ring, &lms[i])
                ));
                return Ok(cert);
            }
        }
    }

    let map = g.leading_map(fam.num_blocks())?;
    let toric = toric_ideal_with_budget(&map, &MonomialOrder::degrevlex(), opts.budget)?;
    cert.toric_generators = toric.generators().iter().map(Polynomial::to_json).collect();
    let images = g.gens.clone();
    for (k, p) in toric.generators().iter().enumerate() {
        let q = p.substitute_indexed(&images, &g.ring);
        let sub = subduct_with_limit(&q, &g, opts.max_subduction_steps)?;
        let zero = sub.is_zero();
        cert.traces.push(GeneratorTrace {
            generator: k,
            part: None,
            binomial: p.to_string(),
            steps: sub.steps,
            remainder_zero: zero,
        });
        if !zero {
            if sub.truncated {
                if cert.verdict == Verdict::Certified {
                    cert.verdict = Verdict::Inconclusive;
                    cert.note = Some(format!("subduction step limit reached on generator {k}"));
                }
            } else {
                cert.verdict = Verdict::Refuted;
                if cert.witness.is_none() {
                    cert.witness = Some(sub.remainder.to_json());
                    cert.note = Some(format!(
                        "generator {k} leaves a remainder whose leading monomial is not a product of generator leading monomials"
                    ));
                }
            }
            if !opts.full_diagnostics {
                break;
            }
        }
    }
    Ok(cert)
}

/// Certifies a single-block family part by part.
///
/// Each part lists indices into the block; parts must use pairwise disjoint
/// variables, and every part must contain a constant (constants may be
/// shared). The family is certified when every part is.
pub fn decoupled_check(
    fam: &BlockFamily,
    partition: &[Vec<usize>],
    ord: &MonomialOrder,
) -> Result<KhovanskiiCertificate> {
    decoupled_check_with(fam, partition, ord, &CertifyOptions::default())
}

pub fn decoupled_check_with(
    fam: &BlockFamily,
    partition: &[Vec<usize>],
    ord: &MonomialOrder,
    opts: &CertifyOptions,
) -> Result<KhovanskiiCertificate> {
    if fam.num_blocks() != 1 {
        return Err(Error::PartitionInvalid(
            "decoupling applies to a single block".into(),
        ));
    }
    let block = &fam.blocks[0];
    if partition.is_empty() {
        return Err(Error::PartitionInvalid("empty partition".into()));
    }
    let mut covered = vec![false; block.len()];
    let mut owner: Vec<Option<usize>> = vec![None; fam.ring.nvars()];
    for (pi, part) in partition.iter().enumerate() {
        if !part.iter().any(|&i| i < block.len() && block[i].is_constant()) {
            return Err(Error::PartitionInvalid(format!("part {pi} has no constant")));
        }
        for &i in part {
            if i >= block.len() {
                return Err(Error::PartitionInvalid(format!("index {i} out of range")));
            }
            if covered[i] && !block[i].is_constant() {
                return Err(Error::PartitionInvalid(format!(
                    "element {i} appears in more than one part"
                )));
            }
            covered[i] = true;
            for v in block[i].variables() {
                match owner[v] {
                    Some(o) if o != pi => {
                        return Err(Error::PartitionInvalid(format!(
                            "variable `{}` occurs in parts {o} and {pi}",
                            fam.ring.vars()[v]
                        )))
                    }
                    _ => owner[v] = Some(pi),
                }
            }
        }
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::PartitionInvalid(
            "partition does not cover the family".into(),
        ));
    }

    let mut merged: Option<KhovanskiiCertificate> = None;
    for (pi, part) in partition.iter().enumerate() {
        let sub_block: Vec<Polynomial> = part.iter().map(|&i| block[i].clone()).collect();
        let sub = BlockFamily::new(&fam.ring, vec![sub_block], fam.labels.clone(), vec![1])?;
        let mut cert = is_khovanskii_with(&sub, ord, opts)?;
        for t in &mut cert.traces {
            t.part = Some(pi);
        }
        merged = Some(match merged {
            None => cert,
            Some(mut acc) => {
                acc.leading_monomials.extend(cert.leading_monomials);
                acc.toric_generators.extend(cert.toric_generators);
                acc.traces.extend(cert.traces);
                acc.verdict = combine(acc.verdict, cert.verdict);
                if acc.witness.is_none() {
                    acc.witness = cert.witness;
                    acc.note = cert.note.map(|n| format!("part {pi}: {n}"));
                }
                acc
            }
        });
        if let Some(m) = &merged {
            if m.verdict == Verdict::Refuted && !opts.full_diagnostics {
                break;
            }
        }
    }
    Ok(merged.expect("nonempty partition"))
}

fn combine(a: Verdict, b: Verdict) -> Verdict {
    match (a, b) {
        (Verdict::Refuted, _) | (_, Verdict::Refuted) => Verdict::Refuted,
        (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
        _ => Verdict::Certified,
    }
}

/// Whether `remainder == 0` is backed by an explicit reconstruction: the
/// subtracted products add back up to `f`.
pub fn verify_subduction(f: &Polynomial, g: &ScaledGeneratorSet, sub: &Subduction) -> Result<bool> {
    let mut cache = HashMap::new();
    let mut acc = sub.remainder.clone();
    for s in &sub.steps {
        let c = crate::polyring::parse_rational(&s.coefficient)?;
        acc = &acc + &g.product(&s.alpha, &mut cache).scale(&c);
    }
    Ok(&acc == f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn decompose_examples() {
        // s^2 u^4 from {s, su, su^3}
        let lts = [m(&[1, 0]), m(&[1, 1]), m(&[1, 3])];
        assert_eq!(monomial_decompose(&m(&[2, 4]), &lts), Some(vec![0, 1, 1]));
        assert_eq!(monomial_decompose(&m(&[0, 0]), &lts), Some(vec![0, 0, 0]));
        // s u from {s v}
        assert_eq!(monomial_decompose(&m(&[1, 1, 0]), &[m(&[1, 0, 1])]), None);
    }

    #[test]
    fn trapezoid_family_certifies() {
        let fam = BlockFamily::parse(
            &["u", "v"],
            &[&["1", "u", "v", "u*(u^2+v^2)", "v*(u^2+v^2)"]],
            &[2],
        )
        .unwrap();
        let cert = is_khovanskii(&fam, &MonomialOrder::deglex()).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert_eq!(cert.traces.len(), cert.toric_generators.len());
    }

    #[test]
    fn example_family_refuted() {
        let fam = BlockFamily::parse(&["x", "y"], &[&["x^2+x", "x*y+y", "y^2+1", "y^3+2"]], &[2]).unwrap();
        let cert = is_khovanskii(&fam, &MonomialOrder::deglex()).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert!(cert.witness.is_some());
    }

    #[test]
    fn constant_input_is_untouched() {
        let fam = BlockFamily::parse(&["u"], &[&["1", "u"]], &[1]).unwrap();
        let g = fam.scaled(&MonomialOrder::deglex()).unwrap();
        let c = Polynomial::constant(g.ring(), Rational::from_integer(5.into()));
        let s = subduct(&c, &g).unwrap();
        assert!(s.steps.is_empty());
        assert_eq!(s.remainder, c);
    }

    #[test]
    fn subduction_reconstructs_input() {
        let fam = BlockFamily::parse(&["u", "v"], &[&["1", "u", "v", "u*(u^2+v^2)"]], &[2]).unwrap();
        let g = fam.scaled(&MonomialOrder::deglex()).unwrap();
        let f = &(&g.generators()[1] * &g.generators()[3]) - &g.generators()[2].pow(2);
        let s = subduct(&f, &g).unwrap();
        assert!(verify_subduction(&f, &g, &s).unwrap());
    }

    #[test]
    fn partition_validation() {
        let fam = BlockFamily::parse(&["a", "b"], &[&["1", "a", "b", "a*b"]], &[2]).unwrap();
        let ord = MonomialOrder::deglex();
        assert!(matches!(
            decoupled_check(&fam, &[vec![0, 1], vec![0, 2, 3]], &ord),
            Err(Error::PartitionInvalid(_))
        ));
        assert!(matches!(
            decoupled_check(&fam, &[vec![0, 1, 2], vec![3]], &ord),
            Err(Error::PartitionInvalid(_))
        ));
        let fam = BlockFamily::parse(&["a", "b"], &[&["1", "a", "b"]], &[2]).unwrap();
        let c = decoupled_check(&fam, &[vec![0, 1], vec![0, 2]], &ord).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
    }
}
