use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::{Error, Result};

/// A monomial order over a ring with a fixed number of variables.
///
/// `priority`, when present, is a permutation listing variable indices from
/// the most significant to the least significant; without it variable `0`
/// is the largest. Weights and block variable lists always refer to the
/// ring's own variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
    /// Blocks compared left to right; each sub-order sees only its own
    /// variables and its priority indexes into `vars`.
    Block(Vec<OrderBlock>),
    /// Weighted degree first, ties broken by `tiebreak` on the full vector.
    Weighted {
        weights: Vec<u64>,
        tiebreak: Box<MonomialOrder>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub order: MonomialOrder,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        Self::plain(OrderKind::Lex)
    }

    pub fn deglex() -> Self {
        Self::plain(OrderKind::DegLex)
    }

    pub fn degrevlex() -> Self {
        Self::plain(OrderKind::DegRevLex)
    }

    fn plain(kind: OrderKind) -> Self {
        MonomialOrder { kind, priority: None }
    }

    /// Same order with an explicit variable precedence.
    pub fn with_priority(mut self, priority: Vec<usize>) -> Self {
        self.priority = Some(priority);
        self
    }

    pub fn block(blocks: Vec<(Vec<usize>, MonomialOrder)>) -> Self {
        Self::plain(OrderKind::Block(
            blocks
                .into_iter()
                .map(|(vars, order)| OrderBlock { vars, order })
                .collect(),
        ))
    }

    pub fn weighted(weights: Vec<u64>, tiebreak: MonomialOrder) -> Self {
        Self::plain(OrderKind::Weighted {
            weights,
            tiebreak: Box::new(tiebreak),
        })
    }

    /// Elimination order: `first` variables dominate, each block degrevlex.
    pub fn elimination(nvars: usize, first: &[usize]) -> Self {
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        Self::block(vec![
            (first.to_vec(), MonomialOrder::degrevlex()),
            (rest, MonomialOrder::degrevlex()),
        ])
    }

    /// Parses the short names accepted on the command line.
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "lex" => Ok(Self::lex()),
            "deglex" | "grlex" => Ok(Self::deglex()),
            "degrevlex" | "grevlex" | "drl" => Ok(Self::degrevlex()),
            other => Err(Error::Parse(format!("unknown monomial order `{other}`"))),
        }
    }

    /// Checks that the order is well formed for `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let Some(p) = &self.priority {
            if !is_permutation(p, nvars) {
                return Err(Error::InvalidParameter(format!(
                    "priority {p:?} is not a permutation of {nvars} variables"
                )));
            }
        }
        match &self.kind {
            OrderKind::Lex | OrderKind::DegLex | OrderKind::DegRevLex => Ok(()),
            OrderKind::Block(blocks) => {
                if self.priority.is_some() {
                    return Err(Error::InvalidParameter(
                        "block orders take priorities inside their blocks".into(),
                    ));
                }
                let mut seen = vec![false; nvars];
                for b in blocks {
                    for &v in &b.vars {
                        if v >= nvars || seen[v] {
                            return Err(Error::InvalidParameter(format!(
                                "block variable {v} out of range or repeated"
                            )));
                        }
                        seen[v] = true;
                    }
                    b.order.validate(b.vars.len())?;
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::InvalidParameter(
                        "blocks do not cover every variable".into(),
                    ));
                }
                Ok(())
            }
            OrderKind::Weighted { weights, tiebreak } => {
                if weights.len() != nvars {
                    return Err(Error::DimensionMismatch {
                        expected: nvars,
                        found: weights.len(),
                    });
                }
                tiebreak.validate(nvars)
            }
        }
    }

    /// True when total degree is compared before anything else.
    pub fn is_degree_compatible(&self) -> bool {
        match &self.kind {
            OrderKind::DegLex | OrderKind::DegRevLex => true,
            OrderKind::Weighted { weights, .. } => {
                weights.first().is_some_and(|w| *w > 0) && weights.iter().all(|w| w == &weights[0])
            }
            _ => false,
        }
    }

    /// Flattens the order into comparison stages over the full exponent vector.
    pub fn compile(&self, nvars: usize) -> CompiledOrder {
        let mut stages = Vec::new();
        let identity: Vec<usize> = (0..nvars).collect();
        self.push_stages(&identity, &mut stages);
        CompiledOrder { nvars, stages }
    }

    fn push_stages(&self, vars: &[usize], out: &mut Vec<Stage>) {
        let ordered: Vec<usize> = match &self.priority {
            Some(p) => p.iter().map(|&k| vars[k]).collect(),
            None => vars.to_vec(),
        };
        match &self.kind {
            OrderKind::Lex => out.push(Stage::Lex(ordered)),
            OrderKind::DegLex => {
                out.push(Stage::Degree(vars.to_vec()));
                out.push(Stage::Lex(ordered));
            }
            OrderKind::DegRevLex => {
                out.push(Stage::Degree(vars.to_vec()));
                out.push(Stage::RevLex(ordered));
            }
            OrderKind::Block(blocks) => {
                for b in blocks {
                    let sub: Vec<usize> = b.vars.iter().map(|&k| vars[k]).collect();
                    b.order.push_stages(&sub, out);
                }
            }
            OrderKind::Weighted { weights, tiebreak } => {
                out.push(Stage::Weight(
                    vars.iter().copied().zip(weights.iter().copied()).collect(),
                ));
                tiebreak.push_stages(vars, out);
            }
        }
    }

    /// Convenience comparison; compiles the order on every call.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compile(a.len()).cmp(a.exponents(), b.exponents())
    }
}

/// Compares two monomials, rejecting monomials from different rings.
pub fn compare(m1: &Monomial, m2: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::RingMismatch(format!(
            "monomials over {} and {} variables",
            m1.len(),
            m2.len()
        )));
    }
    Ok(ord.cmp(m1, m2))
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Stage {
    Degree(Vec<usize>),
    Weight(Vec<(usize, u64)>),
    Lex(Vec<usize>),
    /// Pure reverse lexicographic comparison: the first difference found
    /// scanning from the least significant variable decides, smaller
    /// exponent wins. Only a monomial order after a grading stage.
    RevLex(Vec<usize>),
}

/// An order flattened into stages, ready for hot loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledOrder {
    nvars: usize,
    stages: Vec<Stage>,
}

impl CompiledOrder {
    pub(crate) fn from_stages(nvars: usize, stages: Vec<Stage>) -> Self {
        CompiledOrder { nvars, stages }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        for stage in &self.stages {
            let o = match stage {
                Stage::Degree(vars) => {
                    if vars.len() == a.len() {
                        let da: u64 = a.iter().map(|&e| e as u64).sum();
                        let db: u64 = b.iter().map(|&e| e as u64).sum();
                        da.cmp(&db)
                    } else {
                        let da: u64 = vars.iter().map(|&i| a[i] as u64).sum();
                        let db: u64 = vars.iter().map(|&i| b[i] as u64).sum();
                        da.cmp(&db)
                    }
                }
                Stage::Weight(w) => {
                    let da: u64 = w.iter().map(|&(i, wi)| a[i] as u64 * wi).sum();
                    let db: u64 = w.iter().map(|&(i, wi)| b[i] as u64 * wi).sum();
                    da.cmp(&db)
                }
                Stage::Lex(vars) => vars
                    .iter()
                    .map(|&i| a[i].cmp(&b[i]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal),
                Stage::RevLex(vars) => vars
                    .iter()
                    .rev()
                    .map(|&i| b[i].cmp(&a[i]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal),
            };
            if o.is_ne() {
                return o;
            }
        }
        Ordering::Equal
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp(a.exponents(), b.exponents())
    }
}
