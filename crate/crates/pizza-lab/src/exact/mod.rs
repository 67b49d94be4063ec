//! Exact scalars, affine maps, monomial series and arcs.

mod affine;
mod arc;
mod rational;
mod series;

pub use affine::{affine_interpolate, AffineMap};
pub use arc::{arc_tord, MonoArc};
pub use rational::{format_q, parse_q, q, qi, ratio_to_f64, serde_q, ExtRational, Fin, Inf, Q};
pub use series::{MonomialSeries, Term};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("invalid rational {0:?}")]
    Parse(String),
    #[error("inf - inf is undefined")]
    InfMinusInf,
    #[error("finite - inf is not an exponent")]
    NegativeInfinity,
    #[error("{0} must be finite")]
    Unbounded(String),
    #[error("affine map with slope {0} cannot be evaluated at inf")]
    UnboundedSlope(Q),
    #[error("interpolation through two points with equal abscissa")]
    DegenerateInterpolation,
    #[error("arc dimensions differ: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("coordinate {0} has order {1} < 1")]
    LowOrderCoordinate(usize, Q),
    #[error("coordinate 0 of an arc must be exactly u")]
    NotParametrizedByU,
}
