use serde::{Deserialize, Serialize};

use super::rational::{ExtRational, Fin, Inf, Q};
use super::series::MonomialSeries;
use super::ExactError;

/// An arc `u ↦ (u, s₁(u), …, s_{d−1}(u))` with monomial-series coordinates.
///
/// Coordinate 0 is `u` itself and every other coordinate has order ≥ 1, so
/// `|γ(u)| = u·(1 + o(1))` and tangency orders read off in `u` agree with the
/// distance parametrization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoArc {
    coords: Vec<MonomialSeries>,
}

impl MonoArc {
    /// `tail` are the coordinates after `u`.
    pub fn new(tail: Vec<MonomialSeries>) -> Result<Self, ExactError> {
        for (i, s) in tail.iter().enumerate() {
            if let Fin(o) = s.order() {
                if o < Q::from_integer(1) {
                    return Err(ExactError::LowOrderCoordinate(i + 1, o));
                }
            }
        }
        let mut coords = Vec::with_capacity(tail.len() + 1);
        coords.push(MonomialSeries::power(ExtRational::int(1)));
        coords.extend(tail);
        Ok(MonoArc { coords })
    }

    /// Validates a full coordinate list whose first entry must be `u`.
    pub fn from_coords(coords: Vec<MonomialSeries>) -> Result<Self, ExactError> {
        let mut it = coords.into_iter();
        match it.next() {
            Some(first) if first == MonomialSeries::power(ExtRational::int(1)) => {
                MonoArc::new(it.collect())
            }
            _ => Err(ExactError::NotParametrizedByU),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[MonomialSeries] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &MonomialSeries {
        &self.coords[i]
    }

    /// Replaces coordinate `i ≥ 1`.
    pub fn with_coord(&self, i: usize, s: MonomialSeries) -> Result<Self, ExactError> {
        let mut tail: Vec<_> = self.coords[1..].to_vec();
        tail[i - 1] = s;
        MonoArc::new(tail)
    }

    pub fn eval_f64(&self, u: f64) -> Vec<f64> {
        self.coords.iter().map(|s| s.eval_f64(u)).collect()
    }
}

/// Tangency order: the least order, over coordinates, of `a − b`.
pub fn arc_tord(a: &MonoArc, b: &MonoArc) -> Result<ExtRational, ExactError> {
    if a.dim() != b.dim() {
        return Err(ExactError::Dimension(a.dim(), b.dim()));
    }
    Ok(a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| x.order_of_difference(y))
        .min()
        .unwrap_or(Inf))
}

impl Serialize for MonoArc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonoArc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coords = Vec::<MonomialSeries>::deserialize(d)?;
        MonoArc::from_coords(coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qi};

    fn mono(e: Q, c: Q) -> MonomialSeries {
        MonomialSeries::monomial(e, c)
    }

    #[test]
    fn tord_examples() {
        let a = MonoArc::new(vec![MonomialSeries::zero()]).unwrap();
        let b = MonoArc::new(vec![mono(qi(2), qi(1))]).unwrap();
        assert_eq!(arc_tord(&a, &b).unwrap(), ExtRational::int(2));

        let c = MonoArc::new(vec![mono(q(3, 2), qi(1)).add(&mono(qi(3), qi(1)))]).unwrap();
        let d = MonoArc::new(vec![mono(q(3, 2), qi(1))]).unwrap();
        assert_eq!(arc_tord(&c, &d).unwrap(), ExtRational::int(3));
        assert_eq!(arc_tord(&c, &c).unwrap(), Inf);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = MonoArc::new(vec![]).unwrap();
        let b = MonoArc::new(vec![MonomialSeries::zero()]).unwrap();
        assert_eq!(arc_tord(&a, &b), Err(ExactError::Dimension(1, 2)));
    }

    #[test]
    fn low_order_coordinates_rejected() {
        assert!(MonoArc::new(vec![mono(q(1, 2), qi(1))]).is_err());
        let wrong_first = vec![mono(qi(2), qi(1))];
        assert_eq!(MonoArc::from_coords(wrong_first), Err(ExactError::NotParametrizedByU));
    }
}
