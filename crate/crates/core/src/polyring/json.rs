use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Monomial, PolySystem, Polynomial, Ring};
use crate::{Error, Result};

/// One term: coefficient as a `p/q` (or `p`) string and its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

/// `{"vars": [...], "terms": [{"c": "3/8", "e": [1,3,0]}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// A system over one variable list; equations are term lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub schema: u32,
    pub vars: Vec<String>,
    pub equations: Vec<Vec<TermJson>>,
}

fn terms_to_json(p: &Polynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson {
            c: format_rational(c),
            e: m.exponents().to_vec(),
        })
        .collect()
}

fn terms_from_json(ring: &Arc<Ring>, terms: &[TermJson]) -> Result<Polynomial> {
    let mut p = Polynomial::zero(ring);
    for t in terms {
        if t.e.len() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: t.e.len(),
            });
        }
        p.add_term(Monomial::new(t.e.clone()), parse_rational(&t.c)?);
    }
    Ok(p)
}

impl Polynomial {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.ring.vars.clone(),
            terms: terms_to_json(self),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    /// Builds the polynomial over a fresh ring taken from `vars`.
    pub fn from_json(j: &PolyJson) -> Result<Polynomial> {
        let ring = Ring::try_new(j.vars.iter().cloned())?;
        terms_from_json(&ring, &j.terms)
    }

    /// Reads into an existing ring; the variable lists must agree.
    pub fn from_json_in(ring: &Arc<Ring>, j: &PolyJson) -> Result<Polynomial> {
        if j.vars != ring.vars {
            return Err(Error::RingMismatch(format!(
                "expected variables {:?}, found {:?}",
                ring.vars, j.vars
            )));
        }
        terms_from_json(ring, &j.terms)
    }

    pub fn from_json_str(s: &str) -> Result<Polynomial> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

impl PolySystem {
    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            schema: 1,
            vars: self.ring.vars.clone(),
            equations: self.equations.iter().map(terms_to_json).collect(),
        }
    }

    pub fn from_json(j: &SystemJson) -> Result<PolySystem> {
        let ring = Ring::try_new(j.vars.iter().cloned())?;
        let eqs = j
            .equations
            .iter()
            .map(|t| terms_from_json(&ring, t))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(&ring, eqs)
    }
}


/// Serde adapters storing rationals as `p/q` strings.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::polyring::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        format_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            m.iter()
                .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }

    pub mod option_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref()
                .map(|v| v.iter().map(format_rational).collect::<Vec<_>>())
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
            match Option::<Vec<String>>::deserialize(d)? {
                None => Ok(None),
                Some(v) => v
                    .iter()
                    .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some),
            }
        }
    }

    pub mod option_matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &Option<Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
            m.as_ref()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                })
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Rational>>>, D::Error> {
            match Option::<Vec<Vec<String>>>::deserialize(d)? {
                None => Ok(None),
                Some(m) => m
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some),
            }
        }
    }
}
