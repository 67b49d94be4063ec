use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{ratio_to_f64, serde_q, ExtRational, Fin, Inf, Q};

/// A finite sum `Σ c·u^e` with pairwise distinct exponents and nonzero
/// coefficients, kept sorted by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialSeries {
    terms: Vec<(Q, Q)>,
}

/// Wire form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(with = "serde_q")]
    pub exponent: Q,
    #[serde(with = "serde_q")]
    pub coefficient: Q,
}

impl MonomialSeries {
    pub fn zero() -> Self {
        MonomialSeries { terms: Vec::new() }
    }

    pub fn monomial(exponent: Q, coefficient: Q) -> Self {
        let mut s = MonomialSeries::zero();
        if !coefficient.is_zero() {
            s.terms.push((exponent, coefficient));
        }
        s
    }

    /// `u^e`, or the zero series when `e = ∞`.
    pub fn power(e: ExtRational) -> Self {
        match e {
            Fin(e) => MonomialSeries::monomial(e, Q::from_integer(1)),
            Inf => MonomialSeries::zero(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Q)>) -> Self {
        terms
            .into_iter()
            .fold(MonomialSeries::zero(), |acc, (e, c)| acc.add(&MonomialSeries::monomial(e, c)))
    }

    pub fn terms(&self) -> &[(Q, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent present; `∞` for the zero series.
    pub fn order(&self) -> ExtRational {
        self.terms.first().map_or(Inf, |t| Fin(t.0))
    }

    pub fn leading(&self) -> Option<(Q, Q)> {
        self.terms.first().copied()
    }

    fn combine(&self, other: &Self, sign: Q) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1 + sign * b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MonomialSeries { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Q::from_integer(1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, Q::from_integer(-1))
    }

    pub fn scale(&self, c: Q) -> Self {
        if c.is_zero() {
            return MonomialSeries::zero();
        }
        MonomialSeries { terms: self.terms.iter().map(|&(e, k)| (e, k * c)).collect() }
    }

    /// Multiplies by the monomial `c·u^shift`.
    pub fn mul_monomial(&self, shift: Q, c: Q) -> Self {
        if c.is_zero() {
            return MonomialSeries::zero();
        }
        MonomialSeries { terms: self.terms.iter().map(|&(e, k)| (e + shift, k * c)).collect() }
    }

    /// `order(self − other)` without materializing the difference.
    pub fn order_of_difference(&self, other: &Self) -> ExtRational {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Inf,
                (Some(x), None) => return Fin(x.0),
                (None, Some(y)) => return Fin(y.0),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return Fin(x.0),
                    Ordering::Greater => return Fin(y.0),
                    Ordering::Equal if x.1 != y.1 => return Fin(x.0),
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| ratio_to_f64(c) * u.powf(ratio_to_f64(e)))
            .sum()
    }

    pub fn to_wire(&self) -> Vec<Term> {
        self.terms.iter().map(|&(exponent, coefficient)| Term { exponent, coefficient }).collect()
    }

    pub fn from_wire(terms: &[Term]) -> Self {
        MonomialSeries::from_terms(terms.iter().map(|t| (t.exponent, t.coefficient)))
    }
}

impl Serialize for MonomialSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(MonomialSeries::from_wire(&terms))
    }
}
