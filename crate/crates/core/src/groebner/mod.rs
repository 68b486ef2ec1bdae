//! Gröbner bases, normal forms, elimination, saturation and counting of
//! standard monomials.
//!
//! [`buchberger`] returns the reduced basis of an [`Ideal`]. The computation
//! runs over the integers (primitive polynomials, no fractions) and is
//! deterministic for a fixed input. Every routine that may run long takes a
//! step budget; the default is [`DEFAULT_BUDGET`] reduction steps.

mod engine;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::polyring::{
    divides, CompiledOrder, Monomial, MonomialOrder, PolyJson, Polynomial, Rational, Ring,
};
use crate::{Error, Result};

pub(crate) use engine::{Buchberger, IPoly};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Finite ideal generating set over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch(
                    "ideal generator over a different ring".into(),
                ));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
        })
    }

    /// Parses each generator from text.
    pub fn parse(ring: &Arc<Ring>, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        for g in &other.generators {
            gens.push(g.embed(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// A Gröbner basis with respect to a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    reduced: bool,
}

/// Number of standard monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroebnerJson {
    pub schema: u32,
    pub order: MonomialOrder,
    pub reduced: bool,
    pub generators: Vec<PolyJson>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// True when the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let ord = self.order.compile(self.ring.nvars());
        self.generators
            .iter()
            .map(|g| g.leading_term_compiled(&ord).expect("nonzero").1)
            .collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
        }
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        normal_form(p, self)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    pub fn to_json(&self) -> GroebnerJson {
        GroebnerJson {
            schema: 1,
            order: self.order.clone(),
            reduced: self.reduced,
            generators: self.generators.iter().map(Polynomial::to_json).collect(),
        }
    }

    /// Wraps a generating set that is already known to be a Gröbner basis.
    ///
    /// The claim is verified with the S-pair test.
    pub fn from_generators(ideal: &Ideal, order: &MonomialOrder) -> Result<Self> {
        if !is_groebner(ideal.generators(), order)? {
            return Err(Error::InvalidParameter(
                "generators do not form a Gröbner basis".into(),
            ));
        }
        Ok(GroebnerBasis {
            ring: ideal.ring.clone(),
            order: order.clone(),
            generators: ideal.generators.clone(),
            reduced: false,
        })
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of `ideal` with the default budget.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(ideal, order, DEFAULT_BUDGET)
}

/// Reduced Gröbner basis, failing with `ResourceLimit` once `budget`
/// reduction steps have been spent.
pub fn buchberger_with_budget(ideal: &Ideal, order: &MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let n = ideal.ring.nvars();
    order.validate(n)?;
    let ord = order.compile(n);
    let mut inputs: Vec<IPoly> = ideal
        .generators
        .iter()
        .map(|g| IPoly::from_poly(g, &ord))
        .filter(|p| !p.is_zero())
        .collect();
    inputs.sort_by(|a, b| {
        ord.cmp_mono(a.lm(), b.lm())
            .then_with(|| a.terms.len().cmp(&b.terms.len()))
    });
    let mut bb = Buchberger::new(&ord, budget);
    for p in inputs {
        bb.add(p)?;
    }
    bb.run()?;
    let basis = bb.finish()?;
    let generators = basis.iter().map(|p| p.to_monic(&ideal.ring)).collect();
    Ok(GroebnerBasis {
        ring: ideal.ring.clone(),
        order: order.clone(),
        generators,
        reduced: true,
    })
}

/// Reduced degree-reverse-lexicographic basis computed through the
/// homogenization of `ideal`.
///
/// Homogeneous Buchberger works degree by degree, which keeps coefficient
/// growth in check on dense zero-dimensional systems. Dehomogenizing a
/// degrevlex basis of the homogenization (with the new variable smallest)
/// gives a degrevlex basis of the original ideal.
pub fn degrevlex_basis(ideal: &Ideal) -> Result<GroebnerBasis> {
    degrevlex_basis_with_budget(ideal, DEFAULT_BUDGET)
}

/// [`degrevlex_basis`] with an explicit reduction-step budget.
pub fn degrevlex_basis_with_budget(ideal: &Ideal, budget: u64) -> Result<GroebnerBasis> {
    let order = MonomialOrder::degrevlex();
    let ring = &ideal.ring;
    let n = ring.nvars();
    let homogeneous = ideal.generators.iter().all(|g| g.is_homogeneous_wrt(&vec![1; n]));
    if homogeneous {
        return buchberger_with_budget(ideal, &order, budget);
    }
    let h = ring.fresh_name("h");
    let hring = ring.extended(&[h])?;
    let hom = ideal
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let d = g.total_degree().unwrap_or(0);
            Polynomial::from_terms(
                &hring,
                g.terms().map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.push((d - m.degree()) as u32);
                    (Monomial::new(e), c.clone())
                }),
            )
        })
        .collect();
    let hgb = buchberger_with_budget(&Ideal::new(&hring, hom)?, &order, budget)?;
    let ord = order.compile(n);
    let dehom = hgb
        .generators
        .iter()
        .map(|g| {
            let p = Polynomial::from_terms(
                ring,
                g.terms()
                    .map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())),
            );
            IPoly::from_poly(&p, &ord)
        })
        .collect();
    let mut bb = Buchberger::new(&ord, budget);
    bb.load_basis(dehom);
    let basis = bb.finish()?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        generators: basis.iter().map(|p| p.to_monic(ring)).collect(),
        reduced: true,
    })
}

/// Remainder of `p` on division by `gb`; zero exactly when `p` lies in the
/// ideal.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if p.ring().vars() != gb.ring.vars() {
        return Err(Error::RingMismatch("normal form across rings".into()));
    }
    let ord = gb.order.compile(gb.ring.nvars());
    Ok(divide(p, &gb.generators, &ord))
}

/// Remainder of `p` on division by an arbitrary list, which need not be a
/// Gröbner basis.
pub fn reduce_by(p: &Polynomial, by: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    let n = p.ring().nvars();
    if by.iter().any(|g| g.ring().vars() != p.ring().vars()) {
        return Err(Error::RingMismatch("division across rings".into()));
    }
    order.validate(n)?;
    Ok(divide(p, by, &order.compile(n)))
}

/// Full multivariate division with rational coefficients.
pub(crate) fn divide(p: &Polynomial, by: &[Polynomial], ord: &CompiledOrder) -> Polynomial {
    let lead: Vec<(Rational, Monomial)> = by
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.leading_term_compiled(ord).expect("nonzero"))
        .collect();
    let divisors: Vec<&Polynomial> = by.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.ring());
    while let Ok((c, m)) = rest.leading_term_compiled(ord) {
        match lead
            .iter()
            .position(|(_, lm)| divides(lm.exponents(), m.exponents()))
        {
            Some(k) => {
                let q = m.div(&lead[k].1).expect("divisible");
                let factor = &c / &lead[k].0;
                rest = &rest - &divisors[k].mul_term(&q, &factor);
            }
            None => {
                let t = Polynomial::monomial(p.ring(), m.clone(), c.clone());
                rem = &rem + &t;
                rest = &rest - &t;
            }
        }
    }
    rem
}

/// S-pair test: every S-polynomial reduces to zero modulo `gens`.
pub fn is_groebner(gens: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    let Some(first) = gens.first() else {
        return Ok(true);
    };
    let ring = first.ring().clone();
    order.validate(ring.nvars())?;
    let ord = order.compile(ring.nvars());
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let lts: Vec<(Rational, Monomial)> = gens
        .iter()
        .map(|g| g.leading_term_compiled(&ord).expect("nonzero"))
        .collect();
    let owned: Vec<Polynomial> = gens.iter().map(|g| (*g).clone()).collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if lts[i].1.is_coprime(&lts[j].1) {
                continue;
            }
            let lcm = lts[i].1.lcm(&lts[j].1);
            let a = gens[i].mul_term(&lcm.div(&lts[i].1).expect("lcm"), &lts[i].0.recip());
            let b = gens[j].mul_term(&lcm.div(&lts[j].1).expect("lcm"), &lts[j].0.recip());
            if !divide(&(&a - &b), &owned, &ord).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Counts monomials outside the leading-monomial ideal of `gb`.
///
/// The count includes multiplicities of the corresponding solutions.
pub fn quotient_dimension(gb: &GroebnerBasis) -> Count {
    staircase_count(&gb.leading_monomials(), gb.ring.nvars())
}

/// Standard-monomial count for a monomial ideal given by generators.
pub fn staircase_count(lms: &[Monomial], nvars: usize) -> Count {
    if lms.iter().any(Monomial::is_one) {
        return Count::Finite(0);
    }
    let mut bound = vec![u32::MAX; nvars];
    for m in lms {
        let sup: Vec<usize> = m.support().collect();
        if sup.len() == 1 {
            let i = sup[0];
            bound[i] = bound[i].min(m.exponents()[i]);
        }
    }
    if bound.iter().any(|&b| b == u32::MAX) {
        return Count::Infinite;
    }
    let mut e = vec![0u32; nvars];
    Count::Finite(count_rec(0, &mut e, &bound, lms))
}

/// Standard monomials of a zero-dimensional monomial ideal, or `None` if infinitely many.
pub fn standard_monomials(lms: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    staircase_count(lms, nvars).finite()?;
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![Monomial::one(nvars)];
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in 0..nvars {
            stack.push(m.mul(&Monomial::var(nvars, i, 1)));
        }
        out.push(m);
    }
    out.sort();
    Some(out)
}

fn count_rec(i: usize, e: &mut Vec<u32>, bound: &[u32], lms: &[Monomial]) -> u64 {
    if i == e.len() {
        return 1;
    }
    let mut total = 0;
    for x in 0..bound[i] {
        e[i] = x;
        // later coordinates are still zero, so divisibility here is final
        if lms.iter().any(|m| divides(m.exponents(), e)) {
            break;
        }
        total += count_rec(i + 1, e, bound, lms);
    }
    e[i] = 0;
    total
}

/// Elimination ideal `I ∩ k[remaining variables]`, returned over the ring
/// without the dropped variables.
pub fn eliminate(ideal: &Ideal, drop_vars: &[&str]) -> Result<Ideal> {
    eliminate_with_budget(ideal, drop_vars, DEFAULT_BUDGET)
}

pub fn eliminate_with_budget(ideal: &Ideal, drop_vars: &[&str], budget: u64) -> Result<Ideal> {
    let ring = &ideal.ring;
    let mut drop = Vec::with_capacity(drop_vars.len());
    for v in drop_vars {
        let i = ring.require(v)?;
        if !drop.contains(&i) {
            drop.push(i);
        }
    }
    let keep_names: Vec<String> = ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, v)| v.clone())
        .collect();
    let sub = Ring::try_new(keep_names)?;
    if drop.is_empty() {
        return Ideal::new(&sub, ideal.generators.clone());
    }
    let order = MonomialOrder::elimination(ring.nvars(), &drop);
    let gb = buchberger_with_budget(ideal, &order, budget)?;
    let mut gens = Vec::new();
    for g in gb.generators {
        if g.variables().iter().all(|i| !drop.contains(i)) {
            gens.push(g.embed(&sub)?);
        }
    }
    Ideal::new(&sub, gens)
}

/// Saturation `I : m^∞` by a monomial.
pub fn saturate(ideal: &Ideal, m: &Monomial) -> Result<Ideal> {
    saturate_with_budget(ideal, m, DEFAULT_BUDGET)
}

pub fn saturate_with_budget(ideal: &Ideal, m: &Monomial, budget: u64) -> Result<Ideal> {
    if m.len() != ideal.ring.nvars() {
        return Err(Error::RingMismatch(
            "saturating monomial over a different ring".into(),
        ));
    }
    if m.is_one() {
        return Err(Error::InvalidParameter(
            "cannot saturate by the unit monomial".into(),
        ));
    }
    let f = Polynomial::monomial(&ideal.ring, m.clone(), Rational::one());
    saturate_by_poly_with_budget(ideal, &f, budget)
}

/// Saturation `I : f^∞` through an auxiliary variable `t` and the relation
/// `t f - 1`.
pub fn saturate_by_poly_with_budget(ideal: &Ideal, f: &Polynomial, budget: u64) -> Result<Ideal> {
    let ring = &ideal.ring;
    let t = ring.fresh_name("t");
    let ext = ring.extended(&[t.as_str()])?;
    let mut gens = Vec::with_capacity(ideal.generators.len() + 1);
    for g in &ideal.generators {
        gens.push(g.embed(&ext)?);
    }
    let tv = Polynomial::var(&ext, ring.nvars());
    gens.push(&(&tv * &f.embed(&ext)?) - &Polynomial::one(&ext));
    let ext_ideal = Ideal::new(&ext, gens)?;
    let elim = eliminate_with_budget(&ext_ideal, &[t.as_str()], budget)?;
    let gens = elim
        .generators
        .iter()
        .map(|g| g.embed(ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// Product of all ring variables.
pub fn all_variables(ring: &Arc<Ring>) -> Monomial {
    Monomial::new(vec![1; ring.nvars()])
}

/// Equality of ideals by mutual membership.
pub fn ideals_equal(a: &Ideal, b: &Ideal, order: &MonomialOrder) -> Result<bool> {
    let b = Ideal::new(
        &a.ring,
        b.generators
            .iter()
            .map(|g| g.embed(&a.ring))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let ga = buchberger(a, order)?;
    let gb = buchberger(&b, order)?;
    for g in b.generators() {
        if !ga.contains(g)? {
            return Ok(false);
        }
    }
    for g in a.generators() {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reconstructs a basis from JSON, checking the variable list.
pub fn basis_from_json(j: &GroebnerJson) -> Result<GroebnerBasis> {
    let first = j
        .generators
        .first()
        .ok_or_else(|| Error::Parse("empty generator list".into()))?;
    let ring = Ring::try_new(first.vars.iter().cloned())?;
    let generators = j
        .generators
        .iter()
        .map(|g| Polynomial::from_json_in(&ring, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroebnerBasis {
        ring,
        order: j.order.clone(),
        generators,
        reduced: j.reduced,
    })
}

/// Substitutes variables by rationals where provided, keeping the others.
pub fn specialize(p: &Polynomial, values: &HashMap<String, Rational>) -> Result<Polynomial> {
    let ring = p.ring();
    let images: Vec<Polynomial> = ring
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| match values.get(v) {
            Some(c) => Polynomial::constant(ring, c.clone()),
            None => Polynomial::var(ring, i),
        })
        .collect();
    Ok(p.substitute_indexed(&images, ring))
}
