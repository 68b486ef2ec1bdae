//! Toric ideals of monomial maps and the lattice algebra behind them.
//!
//! A [`MonomialMap`] sends target coordinates `z_j` to monomials in the
//! source variables; column `j` of the exponent matrix holds the exponents
//! of `z_j`'s image. Its toric ideal is generated by the binomials
//! `z^{m+} - z^{m-}` for `m` in the integer kernel of the matrix.
//!
//! [`toric_ideal`] starts from a reduced lattice basis and saturates one
//! variable at a time. Because every column is nonzero and nonnegative the
//! ideal is homogeneous for the weights given by column sums, so each
//! saturation step is one Gröbner basis computation under a weighted
//! reverse-lexicographic order (with the saturating variable last)
//! followed by dividing out that variable.

pub mod lattice;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::groebner::{
    buchberger_with_budget, saturate_with_budget, Buchberger, Count, GroebnerBasis, IPoly, Ideal,
    DEFAULT_BUDGET,
};
use crate::polyring::{CompiledOrder, Monomial, MonomialOrder, Polynomial, Rational, Ring, Stage};
use crate::{Error, Result};

/// Monomial parametrization `z_j ↦ x^{A e_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMap {
    pub source_vars: Vec<String>,
    pub target_vars: Vec<String>,
    /// Row per source variable, column per target coordinate.
    pub exponent_matrix: Vec<Vec<i64>>,
    /// Source rows acting as homogenizing labels (one per block).
    #[serde(default)]
    pub homogenizing: Vec<usize>,
}

impl MonomialMap {
    /// Targets are named `z0, z1, ...`.
    pub fn new<S: Into<String>>(source_vars: Vec<S>, exponent_matrix: Vec<Vec<i64>>) -> Result<Self> {
        let ncols = exponent_matrix.first().map_or(0, Vec::len);
        let targets = (0..ncols).map(|j| format!("z{j}")).collect();
        Self::with_targets(source_vars, targets, exponent_matrix)
    }

    pub fn with_targets<S: Into<String>, T: Into<String>>(
        source_vars: Vec<S>,
        target_vars: Vec<T>,
        exponent_matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let source_vars: Vec<String> = source_vars.into_iter().map(Into::into).collect();
        let target_vars: Vec<String> = target_vars.into_iter().map(Into::into).collect();
        if exponent_matrix.len() != source_vars.len() {
            return Err(Error::DimensionMismatch {
                expected: source_vars.len(),
                found: exponent_matrix.len(),
            });
        }
        for row in &exponent_matrix {
            if row.len() != target_vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: target_vars.len(),
                    found: row.len(),
                });
            }
            if row.iter().any(|&e| e < 0) {
                return Err(Error::InvalidParameter(
                    "negative exponent in monomial map".into(),
                ));
            }
        }
        Ring::try_new(source_vars.iter().cloned())?;
        Ring::try_new(target_vars.iter().cloned())?;
        Ok(MonomialMap {
            source_vars,
            target_vars,
            exponent_matrix,
            homogenizing: Vec::new(),
        })
    }

    /// Marks source variables as homogenizing labels.
    pub fn with_homogenizing(mut self, names: &[&str]) -> Result<Self> {
        let mut rows = Vec::new();
        for n in names {
            let i = self
                .source_vars
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| Error::UnknownVariable(n.to_string()))?;
            rows.push(i);
        }
        self.homogenizing = rows;
        Ok(self)
    }

    /// Builds a map from explicit monomials over a source ring.
    pub fn from_monomials(source: &Arc<Ring>, images: &[Monomial]) -> Result<Self> {
        let rows = (0..source.nvars())
            .map(|i| images.iter().map(|m| m.exponents()[i] as i64).collect())
            .collect();
        Self::new(source.vars().to_vec(), rows)
    }

    pub fn nsource(&self) -> usize {
        self.source_vars.len()
    }

    pub fn ntarget(&self) -> usize {
        self.target_vars.len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.exponent_matrix.iter().map(|r| r[j]).collect()
    }

    pub fn source_ring(&self) -> Arc<Ring> {
        Ring::new(self.source_vars.iter().cloned())
    }

    pub fn target_ring(&self) -> Arc<Ring> {
        Ring::new(self.target_vars.iter().cloned())
    }

    /// Image monomials as polynomials over the source ring, keyed by target name.
    pub fn images(&self) -> HashMap<String, Polynomial> {
        let src = self.source_ring();
        (0..self.ntarget())
            .map(|j| {
                let e = self.column(j).iter().map(|&x| x as u32).collect();
                (
                    self.target_vars[j].clone(),
                    Polynomial::monomial(&src, Monomial::new(e), Rational::one()),
                )
            })
            .collect()
    }

    /// Whether `p` (over the target ring) vanishes under the parametrization.
    pub fn annihilates(&self, p: &Polynomial) -> Result<bool> {
        Ok(p.substitute(&self.images(), &self.source_ring())?.is_zero())
    }

    /// Block index of each column, from its homogenizing row.
    fn column_blocks(&self) -> Vec<usize> {
        (0..self.ntarget())
            .map(|j| {
                self.homogenizing
                    .iter()
                    .position(|&r| self.exponent_matrix[r][j] != 0)
                    .unwrap_or(0)
            })
            .collect()
    }
}

/// Binomial ideal `⟨z^{m+} - z^{m-}⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialIdeal {
    pub ring: Arc<Ring>,
    pub binomials: Vec<(Monomial, Monomial)>,
}

impl BinomialIdeal {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.binomials
            .iter()
            .map(|(a, b)| {
                &Polynomial::monomial(&self.ring, a.clone(), Rational::one())
                    - &Polynomial::monomial(&self.ring, b.clone(), Rational::one())
            })
            .collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polynomials()).expect("same ring")
    }

    pub fn len(&self) -> usize {
        self.binomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.binomials.is_empty()
    }
}

/// Z-basis of the integer kernel, LLL-reduced.
pub fn lattice_kernel(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let ncols = a.first().map_or(0, Vec::len);
    let big = lattice::to_big(a);
    let k = lattice::lll(lattice::kernel_basis(&big, ncols));
    k.into_iter()
        .map(|v| {
            v.iter()
                .map(|x| x.to_i64().expect("kernel entry fits in i64"))
                .collect()
        })
        .collect()
}

fn split(v: &[i64]) -> (Monomial, Monomial) {
    let plus = v.iter().map(|&x| x.max(0) as u32).collect();
    let minus = v.iter().map(|&x| (-x).max(0) as u32).collect();
    (Monomial::new(plus), Monomial::new(minus))
}

/// Weighted order with pure reverse-lex tie-break, `last` the smallest variable.
fn saturation_order(weights: &[u64], last: usize) -> CompiledOrder {
    let n = weights.len();
    let mut rev: Vec<usize> = (0..n).filter(|&i| i != last).collect();
    rev.push(last);
    CompiledOrder::from_stages(
        n,
        vec![
            Stage::Weight(weights.iter().copied().enumerate().collect()),
            Stage::RevLex(rev),
        ],
    )
}

/// Toric ideal of `map` as a reduced Gröbner basis for `order`.
pub fn toric_ideal(map: &MonomialMap, order: &MonomialOrder) -> Result<GroebnerBasis> {
    toric_ideal_with_budget(map, order, DEFAULT_BUDGET)
}

pub fn toric_ideal_with_budget(
    map: &MonomialMap,
    order: &MonomialOrder,
    budget: u64,
) -> Result<GroebnerBasis> {
    let ring = map.target_ring();
    let n = map.ntarget();
    let kernel = lattice_kernel(&map.exponent_matrix);
    let lattice_gens: Vec<Polynomial> = kernel
        .iter()
        .map(|v| {
            let (a, b) = split(v);
            &Polynomial::monomial(&ring, a, Rational::one())
                - &Polynomial::monomial(&ring, b, Rational::one())
        })
        .collect();
    let weights: Vec<u64> = (0..n)
        .map(|j| map.column(j).iter().map(|&x| x as u64).sum())
        .collect();
    if weights.iter().any(|&w| w == 0) {
        // a zero column gives z_j - 1; no positive grading, use the generic route
        let ideal = Ideal::new(&ring, lattice_gens)?;
        let all = Monomial::new(vec![1; n]);
        let sat = if ideal.is_zero() {
            ideal
        } else {
            saturate_with_budget(&ideal, &all, budget)?
        };
        return buchberger_with_budget(&sat, order, budget);
    }

    let mut current: Vec<Polynomial> = lattice_gens;
    for var in 0..n {
        if current.is_empty() {
            break;
        }
        let ord = saturation_order(&weights, var);
        current = saturate_var(&ring, &current, &ord, var, budget)?;
    }
    buchberger_with_budget(&Ideal::new(&ring, current)?, order, budget)
}

/// `I : z_var^∞` for an ideal homogeneous under the order's weights.
fn saturate_var(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    ord: &CompiledOrder,
    var: usize,
    budget: u64,
) -> Result<Vec<Polynomial>> {
    let mut bb = Buchberger::new(ord, budget);
    for g in gens {
        bb.add(IPoly::from_poly(g, ord))?;
    }
    bb.run()?;
    let basis = bb.finish()?;
    Ok(basis
        .into_iter()
        .map(|p| {
            let poly = p.to_monic(ring);
            let low = poly.support().map(|m| m.exponents()[var]).min().unwrap_or(0);
            if low == 0 {
                poly
            } else {
                let d = Monomial::var(ring.nvars(), var, low);
                Polynomial::from_terms(
                    ring,
                    poly.terms()
                        .map(|(m, c)| (m.div(&d).expect("divisible"), c.clone())),
                )
            }
        })
        .collect())
}

/// Reference implementation through one auxiliary variable and elimination.
pub fn toric_ideal_by_elimination(map: &MonomialMap, order: &MonomialOrder) -> Result<GroebnerBasis> {
    let ring = map.target_ring();
    let kernel = lattice_kernel(&map.exponent_matrix);
    let gens: Vec<Polynomial> = kernel
        .iter()
        .map(|v| {
            let (a, b) = split(v);
            &Polynomial::monomial(&ring, a, Rational::one())
                - &Polynomial::monomial(&ring, b, Rational::one())
        })
        .collect();
    let ideal = Ideal::new(&ring, gens)?;
    if ideal.is_zero() {
        return buchberger_with_budget(&ideal, order, DEFAULT_BUDGET);
    }
    let sat = saturate_with_budget(&ideal, &Monomial::new(vec![1; ring.nvars()]), DEFAULT_BUDGET)?;
    buchberger_with_budget(&sat, order, DEFAULT_BUDGET)
}

/// The trapezoid map `z_0 ↦ s`, `z_{2k-1} ↦ s u^{2k-1}`, `z_{2k} ↦ s v u^{2k-2}`.
pub fn trapezoid_map(n: usize) -> Result<MonomialMap> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let cols = 2 * n + 1;
    let mut rows = vec![vec![1i64; cols], vec![0; cols], vec![0; cols]];
    for k in 1..=n {
        rows[1][2 * k - 1] = (2 * k - 1) as i64;
        rows[1][2 * k] = (2 * k - 2) as i64;
        rows[2][2 * k] = 1;
    }
    MonomialMap::new(vec!["s", "u", "v"], rows)?.with_homogenizing(&["s"])
}

/// The explicit binomials `g_m` and `f_{l,m}` over `z_0, ..., z_{2n}`.
pub fn lemma53_generators(n: usize) -> Result<BinomialIdeal> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let nv = 2 * n + 1;
    let ring = Ring::new((0..nv).map(|i| format!("z{i}")));
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; nv];
        for &(i, k) in pairs {
            e[i] += k;
        }
        Monomial::new(e)
    };
    let mut binomials = Vec::new();
    for m in 3..=2 * n {
        binomials.push((mono(&[(0, 2), (m, 1)]), mono(&[(1, 2), (m - 2, 1)])));
    }
    for l in 1..=2 * n - 3 {
        for m in l + 3..=2 * n {
            let rhs = if (l + m) % 2 == 1 {
                mono(&[(l + 1, 1), (m - 1, 1)])
            } else {
                mono(&[(l + 2, 1), (m - 2, 1)])
            };
            binomials.push((mono(&[(l, 1), (m, 1)]), rhs));
        }
    }
    Ok(BinomialIdeal { ring, binomials })
}

/// Lattice index of the column differences, block by block.
///
/// Within each block (columns sharing a homogenizing row), differences are
/// taken against the block's first column and restricted to the
/// non-homogenizing rows. Returns `Count::Infinite` when they do not span a
/// full-rank sublattice.
pub fn lattice_index(map: &MonomialMap) -> Count {
    let rows: Vec<usize> = (0..map.nsource())
        .filter(|r| !map.homogenizing.contains(r))
        .collect();
    let blocks = map.column_blocks();
    let mut base: HashMap<usize, usize> = HashMap::new();
    let mut diffs: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..map.ntarget() {
        match base.get(&blocks[j]) {
            None => {
                base.insert(blocks[j], j);
            }
            Some(&b) => diffs.push(
                rows.iter()
                    .map(|&r| BigInt::from(map.exponent_matrix[r][j] - map.exponent_matrix[r][b]))
                    .collect(),
            ),
        }
    }
    if rows.is_empty() {
        return Count::Finite(1);
    }
    if diffs.is_empty() {
        return Count::Infinite;
    }
    let d = lattice::smith_diagonal(&diffs);
    if d.len() < rows.len() {
        return Count::Infinite;
    }
    let prod = d.iter().fold(BigInt::one(), |acc, x| acc * x);
    Count::Finite(prod.to_u64().expect("index fits in u64"))
}

/// One factor of a fiber product: an ideal and its homogenizing variable.
#[derive(Clone, Debug)]
pub struct Factor<'a> {
    pub ideal: &'a Ideal,
    pub homogenizing: &'a str,
}

/// Union of the factors' generators over the merged ring, with every
/// homogenizing variable renamed to the first factor's.
pub fn fiber_product_generators(factors: &[Factor<'_>]) -> Result<Ideal> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidParameter("no factors given".into()))?;
    let shared = first.homogenizing.to_string();
    let mut names: Vec<String> = Vec::new();
    for f in factors {
        f.ideal.ring().require(f.homogenizing)?;
        for v in f.ideal.ring().vars() {
            if v == f.homogenizing {
                if !names.contains(&shared) {
                    names.push(shared.clone());
                }
                continue;
            }
            if names.contains(v) {
                return Err(Error::VariableCollision(v.clone()));
            }
            names.push(v.clone());
        }
    }
    let ring = Ring::try_new(names)?;
    let mut gens = Vec::new();
    for f in factors {
        let mut rename = HashMap::new();
        rename.insert(f.homogenizing.to_string(), shared.clone());
        for g in f.ideal.generators() {
            gens.push(g.rename_into(&rename, &ring)?);
        }
    }
    Ideal::new(&ring, gens)
}

/// Whether every generator is homogeneous for each homogenizing row's grading.
pub fn is_block_homogeneous(map: &MonomialMap, polys: &[Polynomial]) -> bool {
    map.homogenizing.iter().all(|&r| {
        let w = &map.exponent_matrix[r];
        polys.iter().all(|p| p.is_homogeneous_wrt(w))
    })
}

/// Kernel vectors as binomials (before saturation).
pub fn lattice_basis_ideal(map: &MonomialMap) -> BinomialIdeal {
    let ring = map.target_ring();
    let binomials = lattice_kernel(&map.exponent_matrix)
        .iter()
        .map(|v| {
            let (a, b) = split(v);
            if v.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect();
    BinomialIdeal { ring, binomials }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{ideals_equal, is_groebner};

    #[test]
    fn kernel_of_trapezoid_contains_known_vectors() {
        let map = trapezoid_map(2).unwrap();
        let k = lattice_kernel(&map.exponent_matrix);
        assert_eq!(k.len(), 2);
        // (2,-3,0,1,0) and (2,-2,-1,0,1) lie in the span: check by rank
        let mut m = k.clone();
        m.push(vec![2, -3, 0, 1, 0]);
        m.push(vec![2, -2, -1, 0, 1]);
        assert_eq!(lattice::rank(&lattice::to_big(&m)), 2);
    }

    #[test]
    fn lemma53_counts() {
        assert_eq!(lemma53_generators(2).unwrap().len(), 3);
        assert_eq!(lemma53_generators(3).unwrap().len(), 10);
        assert!(matches!(lemma53_generators(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn trapezoid_toric_ideal_matches_explicit_family() {
        for n in 2..=3 {
            let map = trapezoid_map(n).unwrap();
            let gb = toric_ideal(&map, &MonomialOrder::deglex()).unwrap();
            let fam = lemma53_generators(n).unwrap();
            assert!(ideals_equal(&gb.to_ideal(), &fam.to_ideal(), &MonomialOrder::degrevlex()).unwrap());
            assert!(is_groebner(&fam.polynomials(), &MonomialOrder::deglex()).unwrap());
            for g in gb.generators() {
                assert!(map.annihilates(g).unwrap());
            }
        }
    }

    #[test]
    fn independent_monomials_give_zero_ideal() {
        let map = MonomialMap::new(
            vec!["s", "x", "y"],
            vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert!(toric_ideal(&map, &MonomialOrder::degrevlex()).unwrap().is_empty());
    }

    #[test]
    fn lattice_indices() {
        let m = MonomialMap::new(
            vec!["s", "x", "y"],
            vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap()
        .with_homogenizing(&["s"])
        .unwrap();
        assert_eq!(lattice_index(&m), Count::Finite(1));
        let m = MonomialMap::new(vec!["s", "x"], vec![vec![1, 1], vec![0, 2]])
            .unwrap()
            .with_homogenizing(&["s"])
            .unwrap();
        assert_eq!(lattice_index(&m), Count::Finite(2));
        for n in 2..=5 {
            assert_eq!(lattice_index(&trapezoid_map(n).unwrap()), Count::Finite(1));
        }
    }

    #[test]
    fn agrees_with_elimination_route() {
        let map = MonomialMap::new(vec!["s", "x"], vec![vec![1, 1, 1, 1], vec![0, 1, 3, 4]]).unwrap();
        let a = toric_ideal(&map, &MonomialOrder::degrevlex()).unwrap();
        let b = toric_ideal_by_elimination(&map, &MonomialOrder::degrevlex()).unwrap();
        assert_eq!(a, b);
    }
}
