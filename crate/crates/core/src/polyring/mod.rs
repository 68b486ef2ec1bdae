//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored in a canonical map keyed by exponent vector, independent
//! of any monomial order; sorted views under a particular
//! [`MonomialOrder`] are produced on demand. Rings are immutable variable
//! lists shared through [`Arc`], and variables are identified by name when
//! moving polynomials between rings.

mod json;
mod monomial;
mod order;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use json::{rational_str, PolyJson, SystemJson, TermJson};
pub(crate) use monomial::divides;
pub use monomial::Monomial;
pub(crate) use order::Stage;
pub use order::{compare, CompiledOrder, MonomialOrder, OrderBlock, OrderKind};

use crate::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders `p` for integers and `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    /// Builds a ring; panics on repeated names (see [`Ring::try_new`]).
    pub fn new<I, S>(vars: I) -> Arc<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::try_new(vars).expect("ring variables must be distinct")
    }

    pub fn try_new<I, S>(vars: I) -> Result<Arc<Ring>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::InvalidParameter(format!(
                    "variable name `{v}` is empty or repeated"
                )));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new ring with `extra` variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Ring>> {
        Ring::try_new(
            self.vars
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    /// A fresh variable name not present in the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{stem}{k}");
        }
        name
    }
}

/// A polynomial over a [`Ring`] with no stored zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.vars == other.ring.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), Rational::one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.require(name)?))
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses text such as `3/8*u*(u^2+v^2) - v + 2` over `ring`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        parse::parse_polynomial(ring, text)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Variables that occur with a positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.len(), self.ring.nvars(), "monomial length does not match ring");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Largest term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Rational, Monomial)> {
        let compiled = ord.compile(self.ring.nvars());
        self.leading_term_compiled(&compiled)
    }

    pub fn leading_term_compiled(&self, ord: &CompiledOrder) -> Result<(Rational, Monomial)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_mono(a.0, b.0))
            .map(|(m, c)| (c.clone(), m.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(ord).ok().map(|(_, m)| m)
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let compiled = ord.compile(self.ring.nvars());
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| compiled.cmp_mono(&b.0, &a.0));
        v
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<Polynomial> {
        let (c, _) = self.leading_term(ord)?;
        Ok(self.scale(&c.recip()))
    }

    /// Scales to integer coefficients with content one and positive
    /// leading coefficient (under the canonical storage order).
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        let last = self.terms.values().next_back().expect("nonzero");
        let sign = if last.is_negative() { -1 } else { 1 };
        let factor = Rational::new(den * sign, g);
        self.scale(&factor)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces variables by polynomials over `target`.
    ///
    /// Every variable that occurs in `self` must be bound; images must live
    /// in `target`.
    pub fn substitute(
        &self,
        assignment: &HashMap<String, Polynomial>,
        target: &Arc<Ring>,
    ) -> Result<Polynomial> {
        let mut images: Vec<Option<&Polynomial>> = Vec::with_capacity(self.ring.nvars());
        for name in &self.ring.vars {
            let img = assignment.get(name);
            if let Some(p) = img {
                if p.ring.vars != target.vars {
                    return Err(Error::RingMismatch(format!(
                        "image of `{name}` is not over the target ring"
                    )));
                }
            }
            images.push(img);
        }
        for i in self.variables() {
            if images[i].is_none() {
                return Err(Error::UnboundVariable(self.ring.vars[i].clone()));
            }
        }
        let imgs: Vec<Polynomial> = images
            .into_iter()
            .map(|o| o.cloned().unwrap_or_else(|| Polynomial::zero(target)))
            .collect();
        Ok(self.substitute_indexed(&imgs, target))
    }

    /// Substitution with images given positionally; unused slots are ignored.
    pub fn substitute_indexed(&self, images: &[Polynomial], target: &Arc<Ring>) -> Polynomial {
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.index_of(v)).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += x,
                    None => return Err(Error::UnknownVariable(self.ring.vars[i].clone())),
                }
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Renames variables (`from` name to `to` name) and embeds into `target`.
    pub fn rename_into(&self, renaming: &HashMap<String, String>, target: &Arc<Ring>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target);
        let map: Vec<Option<usize>> = self
            .ring
            .vars
            .iter()
            .map(|v| target.index_of(renaming.get(v).unwrap_or(v)))
            .collect();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ring.vars[i].clone()))?;
                e[j] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Homogeneous with respect to integer weights on the variables.
    pub fn is_homogeneous_wrt(&self, weights: &[i64]) -> bool {
        let mut degs = self.terms.keys().map(|m| {
            m.exponents()
                .iter()
                .zip(weights)
                .map(|(&e, &w)| e as i64 * w)
                .sum::<i64>()
        });
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring.vars == other.ring.vars,
            "polynomial arithmetic across different rings"
        );
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Terms largest first under degree-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms = self.sorted_terms(&MonomialOrder::deglex());
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(&self.ring, m);
            match (a.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{}", format_rational(&a))?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_rational(&a))?,
            }
        }
        Ok(())
    }
}

/// `x^2*y`, or the empty string for the unit monomial.
pub fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars[i].clone()),
            _ => parts.push(format!("{}^{e}", ring.vars[i])),
        }
    }
    parts.join("*")
}

/// A list of equations over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    ring: Arc<Ring>,
    equations: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(ring: &Arc<Ring>, equations: Vec<Polynomial>) -> Result<Self> {
        for e in &equations {
            if e.ring.vars != ring.vars {
                return Err(Error::RingMismatch(
                    "system equation over a different ring".into(),
                ));
            }
        }
        Ok(PolySystem {
            ring: ring.clone(),
            equations,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.equations.len() == self.ring.nvars()
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e} = 0")?;
        }
        Ok(())
    }
}
