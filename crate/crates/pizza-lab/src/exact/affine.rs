use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{serde_q, ExtRational, Fin, Inf, Q};
use super::ExactError;

/// Affine width function `μ(q) = a·q + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    #[serde(with = "serde_q")]
    pub a: Q,
    #[serde(with = "serde_q")]
    pub b: Q,
}

impl AffineMap {
    pub fn new(a: Q, b: Q) -> Self {
        AffineMap { a, b }
    }

    pub fn identity() -> Self {
        AffineMap::new(Q::one(), Q::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero()
    }

    pub fn eval_fin(&self, q: Q) -> Q {
        self.a * q + self.b
    }

    /// Evaluates at an extended exponent; `μ(∞) = ∞` needs a positive slope.
    pub fn eval(&self, q: ExtRational) -> Result<ExtRational, ExactError> {
        match q {
            Fin(v) => Ok(Fin(self.eval_fin(v))),
            Inf if self.a > Q::zero() => Ok(Inf),
            Inf => Err(ExactError::UnboundedSlope(self.a)),
        }
    }

    /// Inverse value `μ⁻¹(m)` for non-constant maps.
    pub fn preimage(&self, m: ExtRational) -> Result<ExtRational, ExactError> {
        if self.a.is_zero() {
            return Err(ExactError::DegenerateInterpolation);
        }
        match m {
            Fin(v) => Ok(Fin((v - self.b) / self.a)),
            Inf if self.a > Q::zero() => Ok(Inf),
            Inf => Err(ExactError::UnboundedSlope(self.a)),
        }
    }
}

/// The unique affine map through `(q1, m1)` and `(q2, m2)`.
///
/// Besides finite data, `(q2, m2) = (∞, ∞)` is accepted; the slope is then
/// not pinned by the data and is taken as 1 (the identity-type extension),
/// which is the only use the crate makes of it.
pub fn affine_interpolate(
    q1: ExtRational,
    m1: ExtRational,
    q2: ExtRational,
    m2: ExtRational,
) -> Result<AffineMap, ExactError> {
    if q1 == q2 {
        return Err(ExactError::DegenerateInterpolation);
    }
    match (q1, m1, q2, m2) {
        (Fin(q1), Fin(m1), Fin(q2), Fin(m2)) => {
            let a = (m2 - m1) / (q2 - q1);
            Ok(AffineMap::new(a, m1 - a * q1))
        }
        (Fin(q1), Fin(m1), Inf, Inf) | (Inf, Inf, Fin(q1), Fin(m1)) => {
            Ok(AffineMap::new(Q::one(), m1 - q1))
        }
        _ => Err(ExactError::Unbounded("interpolation endpoint".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qi};

    #[test]
    fn interpolation_examples() {
        let m = affine_interpolate(ExtRational::int(3), ExtRational::int(3), ExtRational::int(4), ExtRational::int(2))
            .unwrap();
        assert_eq!((m.a, m.b), (qi(-1), qi(6)));
        let id = affine_interpolate(ExtRational::int(2), ExtRational::int(2), ExtRational::int(4), ExtRational::int(4))
            .unwrap();
        assert!(id.is_identity());
        let id = affine_interpolate(ExtRational::int(1), ExtRational::int(1), Inf, Inf).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn degenerate_interpolation_rejected() {
        let two = ExtRational::int(2);
        assert_eq!(
            affine_interpolate(two, two, two, ExtRational::int(3)),
            Err(ExactError::DegenerateInterpolation)
        );
    }

    #[test]
    fn evaluation_at_infinity() {
        let m = AffineMap::new(q(1, 2), qi(1));
        assert_eq!(m.eval(Inf), Ok(Inf));
        assert!(AffineMap::new(qi(-1), qi(6)).eval(Inf).is_err());
        assert_eq!(m.preimage(ExtRational::int(2)), Ok(ExtRational::int(2)));
    }
}
