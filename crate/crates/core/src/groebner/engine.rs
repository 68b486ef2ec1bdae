//! Fraction-free Buchberger over the integers.
//!
//! Polynomials are kept primitive with a positive leading coefficient, so
//! reduction works with integer cross-multiplication instead of rational
//! division. The pair queue uses the Gebauer-Moeller update and a sugar
//! selection strategy.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::{CompiledOrder, Monomial, Polynomial, Rational};
use crate::{Error, Result};

pub(crate) type Term = (Monomial, BigInt);

/// Integer polynomial with terms sorted from largest to smallest.
#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    pub terms: Vec<Term>,
    pub sugar: u64,
}

impl IPoly {
    pub fn from_poly(p: &Polynomial, ord: &CompiledOrder) -> IPoly {
        let prim = p.primitive_part();
        let mut terms: Vec<Term> = prim
            .terms()
            .map(|(m, c)| (m.clone(), c.numer().clone()))
            .collect();
        terms.sort_by(|a, b| ord.cmp_mono(&b.0, &a.0));
        let sugar = terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        let mut out = IPoly { terms, sugar };
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }

    pub fn to_monic(&self, ring: &std::sync::Arc<crate::Ring>) -> Polynomial {
        let lc = Rational::from_integer(self.lc().clone());
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)),
        )
    }
}

fn mask(m: &Monomial) -> u64 {
    let mut out = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            out |= 1 << (i % 64);
        }
    }
    out
}

/// `a * f - b * shift * g`, both inputs sorted descending.
fn lincomb(
    a: &BigInt,
    f: &[Term],
    b: &BigInt,
    shift: Option<&Monomial>,
    g: &[Term],
    ord: &CompiledOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let a_one = a.is_one();
    let shifted = |t: &Term| match shift {
        Some(s) => t.0.mul(s),
        None => t.0.clone(),
    };
    let mut i = 0;
    let mut j = 0;
    let mut gm = g.first().map(shifted);
    while i < f.len() || j < g.len() {
        let o = match (f.get(i), &gm) {
            (Some(ft), Some(m)) => ord.cmp_mono(&ft.0, m),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match o {
            Ordering::Greater => {
                let c = if a_one { f[i].1.clone() } else { a * &f[i].1 };
                out.push((f[i].0.clone(), c));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().expect("term"), -(b * &g[j].1)));
                j += 1;
                gm = g.get(j).map(shifted);
            }
            Ordering::Equal => {
                let c = if a_one { f[i].1.clone() } else { a * &f[i].1 } - b * &g[j].1;
                if !c.is_zero() {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(shifted);
            }
        }
    }
    out
}

pub(crate) struct Engine<'a> {
    pub ord: &'a CompiledOrder,
    pub budget: u64,
    pub steps: u64,
}

impl<'a> Engine<'a> {
    pub fn new(ord: &'a CompiledOrder, budget: u64) -> Self {
        Engine {
            ord,
            budget,
            steps: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::ResourceLimit { budget: self.budget });
        }
        Ok(())
    }

    /// Reduces `f` by the basis elements listed in `active`.
    ///
    /// With `full` the tail is reduced too; otherwise only the leading term.
    pub fn reduce(
        &mut self,
        f: IPoly,
        basis: &[IPoly],
        masks: &[u64],
        active: &[usize],
        full: bool,
    ) -> Result<IPoly> {
        let sugar = f.sugar;
        let mut sugar_out = sugar;
        let mut rest = f.terms;
        let mut pos = 0;
        let mut done: Vec<Term> = Vec::new();
        let mut since_content = 0u32;
        while pos < rest.len() {
            let mm = mask(&rest[pos].0);
            let reducer = active
                .iter()
                .copied()
                .find(|&k| masks[k] & !mm == 0 && basis[k].lm().divides(&rest[pos].0));
            match reducer {
                None => {
                    if !full {
                        break;
                    }
                    pos += 1;
                }
                Some(k) => {
                    self.tick()?;
                    let g = &basis[k];
                    let q = rest[pos].0.div(g.lm()).expect("divisible");
                    let c = rest[pos].1.clone();
                    let gc = c.gcd(g.lc());
                    let mut a = g.lc() / &gc;
                    let mut b = &c / &gc;
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    sugar_out = sugar_out.max(q.degree() + g.sugar);
                    let shift = if q.is_one() { None } else { Some(&q) };
                    // terms before `pos` are already irreducible
                    if pos > 0 {
                        done.extend(rest.drain(..pos));
                        pos = 0;
                    }
                    if !a.is_one() {
                        for t in &mut done {
                            t.1 *= &a;
                        }
                    }
                    rest = lincomb(&a, &rest[1..], &b, shift, &g.terms[1..], self.ord);
                    since_content += 1;
                    if since_content >= 16 {
                        since_content = 0;
                        strip_content(&mut done, &mut rest);
                    }
                }
            }
        }
        done.extend(rest);
        let mut out = IPoly {
            terms: done,
            sugar: sugar_out,
        };
        out.normalize();
        Ok(out)
    }

    fn spoly(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let lcm = f.lm().lcm(g.lm());
        let tf = lcm.div(f.lm()).expect("lcm");
        let tg = lcm.div(g.lm()).expect("lcm");
        let gc = f.lc().gcd(g.lc());
        let a = g.lc() / &gc;
        let b = f.lc() / &gc;
        let fs: Vec<Term> = f.terms[1..]
            .iter()
            .map(|(m, c)| (m.mul(&tf), c.clone()))
            .collect();
        let terms = lincomb(
            &a,
            &fs,
            &b,
            if tg.is_one() { None } else { Some(&tg) },
            &g.terms[1..],
            self.ord,
        );
        let sugar = (f.sugar + tf.degree()).max(g.sugar + tg.degree());
        let mut p = IPoly { terms, sugar };
        p.normalize();
        p
    }
}

fn strip_content(done: &mut [Term], rest: &mut [Term]) {
    let mut g = BigInt::zero();
    for (_, c) in done.iter().chain(rest.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for t in done.iter_mut().chain(rest.iter_mut()) {
        t.1 = &t.1 / &g;
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Buchberger state: basis, pair queue, and the indices still in use.
pub(crate) struct Buchberger<'a> {
    eng: Engine<'a>,
    basis: Vec<IPoly>,
    masks: Vec<u64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    unit: bool,
}

impl<'a> Buchberger<'a> {
    pub fn new(ord: &'a CompiledOrder, budget: u64) -> Self {
        Buchberger {
            eng: Engine::new(ord, budget),
            basis: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            unit: false,
        }
    }

    /// Loads a set already known to be a Gröbner basis, keeping only the
    /// elements with minimal leading monomials.
    pub fn load_basis(&mut self, mut gens: Vec<IPoly>) {
        let ord = self.eng.ord;
        gens.retain(|g| !g.is_zero());
        gens.sort_by(|a, b| {
            ord.cmp_mono(a.lm(), b.lm())
                .then_with(|| a.terms.len().cmp(&b.terms.len()))
        });
        for g in gens {
            if g.lm().is_one() {
                self.unit = true;
                return;
            }
            if self.active.iter().any(|&k| self.basis[k].lm().divides(g.lm())) {
                continue;
            }
            self.active.push(self.basis.len());
            self.masks.push(mask(g.lm()));
            self.basis.push(g);
        }
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let d = lcm.degree();
        let si = self.basis[i].sugar + d - self.basis[i].lm().degree();
        let sj = self.basis[j].sugar + d - self.basis[j].lm().degree();
        si.max(sj)
    }

    /// Gebauer-Moeller update after adding a new element.
    fn update(&mut self, h: IPoly) {
        if h.lm().is_one() {
            self.unit = true;
            return;
        }
        let hi = self.basis.len();
        self.masks.push(mask(h.lm()));
        self.basis.push(h);
        let lh = self.basis[hi].lm().clone();

        let mut cand: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lg = self.basis[g].lm();
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();

        // chain criterion among the new pairs
        let mut keep: Vec<bool> = vec![true; cand.len()];
        for a in 0..cand.len() {
            if cand[a].2 {
                continue;
            }
            for b in 0..cand.len() {
                if a == b {
                    continue;
                }
                let equal = cand[b].1 == cand[a].1;
                if cand[b].1.divides(&cand[a].1) && (!equal || b < a || cand[b].2) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion drops coprime pairs after they have served the chain test
        let mut fresh: Vec<Pair> = Vec::new();
        for (k, (g, lcm, coprime)) in cand.drain(..).enumerate() {
            if keep[k] && !coprime {
                let sugar = self.pair_sugar(g, hi, &lcm);
                fresh.push(Pair {
                    i: g,
                    j: hi,
                    lcm,
                    sugar,
                });
            }
        }

        // old pairs made redundant by the new leading monomial
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lh.lcm(basis[p.i].lm()) != p.lcm && lh.lcm(basis[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(fresh);

        let masks = &self.masks;
        let lh_mask = masks[hi];
        self.active
            .retain(|&g| !(lh_mask & !masks[g] == 0 && lh.divides(basis[g].lm())));
        self.active.push(hi);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.eng.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (p, q) = (&self.pairs[k], &self.pairs[best]);
            let o = p
                .sugar
                .cmp(&q.sugar)
                .then_with(|| ord.cmp_mono(&p.lcm, &q.lcm))
                .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)));
            if o == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Adds an input polynomial (reduced against the current basis first).
    pub fn add(&mut self, f: IPoly) -> Result<()> {
        if f.is_zero() || self.unit {
            return Ok(());
        }
        let h = self.eng.reduce(f, &self.basis, &self.masks, &self.active, true)?;
        if !h.is_zero() {
            self.update(h);
        }
        Ok(())
    }

    pub fn run(&mut self) -> Result<()> {
        while !self.unit {
            let Some(p) = self.select() else { break };
            let s = self.eng.spoly(&self.basis[p.i], &self.basis[p.j]);
            if s.is_zero() {
                continue;
            }
            let mut s = s;
            s.sugar = s.sugar.max(p.sugar);
            let h = self.eng.reduce(s, &self.basis, &self.masks, &self.active, true)?;
            if !h.is_zero() {
                self.update(h);
            }
        }
        Ok(())
    }

    /// Reduced basis: minimal, tail-reduced, primitive, sorted ascending by
    /// leading monomial.
    pub fn finish(mut self) -> Result<Vec<IPoly>> {
        let ord = self.eng.ord;
        if self.unit {
            let n = ord.nvars();
            return Ok(vec![IPoly {
                terms: vec![(Monomial::one(n), BigInt::one())],
                sugar: 0,
            }]);
        }
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| ord.cmp_mono(self.basis[a].lm(), self.basis[b].lm()));
        let mut out: Vec<IPoly> = Vec::with_capacity(idx.len());
        let mut masks = Vec::with_capacity(idx.len());
        for &k in &idx {
            out.push(self.basis[k].clone());
            masks.push(self.masks[k]);
        }
        // in a minimal basis no leading monomial is divisible by another, so
        // full reduction against the others only rewrites the tail
        for k in 0..out.len() {
            let others: Vec<usize> = (0..out.len()).filter(|&x| x != k).collect();
            let f = std::mem::replace(
                &mut out[k],
                IPoly {
                    terms: Vec::new(),
                    sugar: 0,
                },
            );
            out[k] = self.eng.reduce(f, &out, &masks, &others, true)?;
        }
        Ok(out)
    }
}
