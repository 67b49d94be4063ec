//! Rational exponents extended by `∞`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// Finite rational scalar used everywhere in the crate.
pub type Q = Ratio<i64>;

/// Shorthand for `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Shorthand for the integer `n`.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// An exponent in ℚ ∪ {∞}. Every finite value compares below `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Fin(Q),
    Inf,
}

pub use ExtRational::{Fin, Inf};

impl ExtRational {
    pub fn new(n: i64, d: i64) -> Self {
        Fin(Q::new(n, d))
    }

    pub fn int(n: i64) -> Self {
        Fin(Q::from_integer(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Inf)
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            Fin(v) => Some(*v),
            Inf => None,
        }
    }

    /// The finite value, or an error naming `what`.
    pub fn expect_finite(&self, what: &str) -> Result<Q, ExactError> {
        self.finite()
            .ok_or_else(|| ExactError::Unbounded(what.to_string()))
    }

    /// `∞ + x = ∞`; finite values add exactly.
    pub fn add(self, other: ExtRational) -> ExtRational {
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a + b),
            _ => Inf,
        }
    }

    /// Subtraction; `∞ − ∞` and `x − ∞` are rejected.
    pub fn sub(self, other: ExtRational) -> Result<ExtRational, ExactError> {
        match (self, other) {
            (Fin(a), Fin(b)) => Ok(Fin(a - b)),
            (Inf, Fin(_)) => Ok(Inf),
            (Inf, Inf) => Err(ExactError::InfMinusInf),
            (Fin(_), Inf) => Err(ExactError::NegativeInfinity),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Fin(v) => ratio_to_f64(v),
            Inf => f64::INFINITY,
        }
    }
}

impl From<Q> for ExtRational {
    fn from(v: Q) -> Self {
        Fin(v)
    }
}

impl PartialEq<Q> for ExtRational {
    fn eq(&self, other: &Q) -> bool {
        matches!(self, Fin(v) if v == other)
    }
}

impl PartialOrd<Q> for ExtRational {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(&Fin(*other)))
    }
}

pub fn ratio_to_f64(v: &Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Render a rational as `p/q`, or `p` when the denominator is one.
pub fn format_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parse `p/q` or `p`; a zero denominator is an error rather than a panic.
pub fn parse_q(s: &str) -> Result<Q, ExactError> {
    let bad = || ExactError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / g, d / g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Ok(Q::new_raw(n, d))
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(v) => f.write_str(&format_q(v)),
            Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(Inf),
            other => parse_q(other).map(Fin),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct ExtVisitor;

impl Visitor<'_> for ExtVisitor {
    type Value = ExtRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\", \"p\", \"inf\", or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtRational, E> {
        v.parse().map_err(|e: ExactError| E::custom(e))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtRational, E> {
        Ok(ExtRational::int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtRational, E> {
        i64::try_from(v)
            .map(ExtRational::int)
            .map_err(|_| E::custom("integer out of range"))
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ExtVisitor)
    }
}

/// Serde adapter for plain `Q` fields (same wire format, `inf` rejected).
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        match ExtRational::deserialize(d)? {
            Fin(v) => Ok(v),
            Inf => Err(de::Error::custom("expected a finite rational, found inf")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_the_top_element() {
        assert!(ExtRational::int(1_000_000) < Inf);
        assert!(Fin(q(-3, 2)) < Fin(q(1, 1)));
        assert_eq!(Inf.add(ExtRational::int(3)), Inf);
    }

    #[test]
    fn inf_minus_inf_is_an_error() {
        assert_eq!(Inf.sub(Inf), Err(ExactError::InfMinusInf));
        assert_eq!(Inf.sub(ExtRational::int(2)), Ok(Inf));
    }

    #[test]
    fn text_round_trip() {
        for s in ["3/2", "-7/4", "5", "inf", "0"] {
            let v: ExtRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("6/4".parse::<ExtRational>().unwrap(), ExtRational::new(3, 2));
        assert_eq!("3/-6".parse::<ExtRational>().unwrap(), ExtRational::new(-1, 2));
        assert!("3/0".parse::<ExtRational>().is_err());
        assert!("x".parse::<ExtRational>().is_err());
    }

    #[test]
    fn json_accepts_integers_and_strings() {
        let v: Vec<ExtRational> = serde_json::from_str(r#"["1/2", 3, "inf"]"#).unwrap();
        assert_eq!(v, vec![ExtRational::new(1, 2), ExtRational::int(3), Inf]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","inf"]"#);
    }
}
