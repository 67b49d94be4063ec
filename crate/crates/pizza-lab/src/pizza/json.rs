use serde::{Deserialize, Serialize};

use super::{AbstractPizza, PizzaError, Width};
use crate::exact::{format_q, parse_q, AffineMap, ExtRational, Q};

/// Wire form of an abstract pizza. Rationals are strings so that a
/// malformed entry can be reported with its field path; `ν` is never read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PizzaJson {
    pub p: usize,
    pub q: Vec<String>,
    pub beta: Vec<String>,
    pub mu: Vec<MuJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MuJson {
    Point,
    Affine { a: String, b: String },
}

fn field_q(field: String, s: &str) -> Result<Q, PizzaError> {
    parse_q(s).map_err(|_| PizzaError::Invalid(format!("{field}: invalid rational {s:?}")))
}

impl PizzaJson {
    pub fn to_pizza(&self) -> Result<AbstractPizza, PizzaError> {
        let q = self
            .q
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.parse::<ExtRational>()
                    .map_err(|_| PizzaError::Invalid(format!("q[{i}]: invalid rational {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let beta = self
            .beta
            .iter()
            .enumerate()
            .map(|(i, s)| field_q(format!("beta[{}]", i + 1), s))
            .collect::<Result<Vec<_>, _>>()?;
        let mu = self
            .mu
            .iter()
            .enumerate()
            .map(|(i, m)| match m {
                MuJson::Point => Ok(Width::Point),
                MuJson::Affine { a, b } => Ok(Width::Affine(AffineMap::new(
                    field_q(format!("mu[{}].a", i + 1), a)?,
                    field_q(format!("mu[{}].b", i + 1), b)?,
                ))),
            })
            .collect::<Result<Vec<_>, PizzaError>>()?;
        if self.p != beta.len() {
            return Err(PizzaError::Invalid(format!("p: {} but {} betas", self.p, beta.len())));
        }
        AbstractPizza::new(q, beta, mu)
    }

    pub fn from_pizza(p: &AbstractPizza) -> Self {
        PizzaJson {
            p: p.p(),
            q: p.qs().iter().map(ToString::to_string).collect(),
            beta: p.betas().iter().map(format_q).collect(),
            mu: p
                .widths()
                .iter()
                .map(|w| match w {
                    Width::Point => MuJson::Point,
                    Width::Affine(m) => MuJson::Affine { a: format_q(&m.a), b: format_q(&m.b) },
                })
                .collect(),
        }
    }
}

impl Serialize for AbstractPizza {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PizzaJson::from_pizza(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbstractPizza {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PizzaJson::deserialize(d)?.to_pizza().map_err(serde::de::Error::custom)
    }
}
