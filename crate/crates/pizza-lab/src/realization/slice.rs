//! The standard slice `ψ = φ∘h_{β,κ}` with `φ = u^α v^{1/a}`, transported
//! over a slice between two arcs by the straightening maps `H±`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::RealizationError;
use crate::exact::{ratio_to_f64, ExtRational, Fin, Inf, MonomialSeries, Q};
use crate::pizza::Width;

/// Which boundary arc is sent to `{v = 0}`: `Plus` sends the left arc
/// (`H⁺`, minimum width at the right end), `Minus` the right one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// Closed form of `f` on one slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SliceFormula {
    /// `f = c·u^q`, `c = 1` or [`grade`]`(q)`.
    Point { q: ExtRational, graded: bool },
    /// `f = ψ∘H` with `μ(q) = a(q − α)` and `κ` its largest value.
    Standard {
        #[serde(with = "crate::exact::serde_q")]
        beta: Q,
        #[serde(with = "crate::exact::serde_q")]
        a: Q,
        #[serde(with = "crate::exact::serde_q")]
        alpha: Q,
        kappa: ExtRational,
        side: Side,
        /// Boundary values `grade(q)·u^q` instead of `u^q`.
        graded: bool,
    },
}

/// Coefficient `2^{−⌈4e⌉}` (capped) attached to `u^e` in graded families:
/// higher exponents get smaller coefficients, which keeps sampled slopes
/// dominated by the leading term at moderate `u`.
pub fn grade(e: Q) -> Q {
    let k = (e * Q::from_integer(4)).ceil().to_integer().clamp(0, 52);
    Q::new(1, 1i64 << k)
}

/// `grade(e)·u^e`, or zero for `e = ∞`.
pub fn graded_power(e: ExtRational) -> MonomialSeries {
    match e {
        Fin(e) => MonomialSeries::monomial(e, grade(e)),
        Inf => MonomialSeries::zero(),
    }
}

fn div_q(x: ExtRational, a: Q) -> ExtRational {
    match x {
        Fin(v) => Fin(v / a),
        Inf => Inf,
    }
}

impl SliceFormula {
    /// Formula for a slice of exponent `β` between arcs of orders `q_left`
    /// and `q_right`.
    pub fn new(
        beta: Q,
        q_left: ExtRational,
        q_right: ExtRational,
        width: Width,
        graded: bool,
    ) -> Result<Self, RealizationError> {
        let m = match width {
            Width::Point => return Ok(SliceFormula::Point { q: q_left, graded }),
            Width::Affine(m) if !m.a.is_zero() => m,
            Width::Affine(_) => return Err(RealizationError::Slice("constant width on a non-point slice".into())),
        };
        let (wl, wr) = (m.eval(q_left)?, m.eval(q_right)?);
        let (side, low, far) = if wr < wl { (Side::Plus, wr, wl) } else { (Side::Minus, wl, wr) };
        if low != Fin(beta) {
            return Err(RealizationError::Slice(format!("minimum width {low} differs from β = {beta}")));
        }
        Ok(SliceFormula::Standard { beta, a: m.a, alpha: -m.b / m.a, kappa: far, side, graded })
    }

    /// Exact order of `f` along the arc `v(u)` lying in the slice between
    /// `left(u)` and `right(u)`; only leading exponents are needed since all
    /// coefficients entering `h_{β,κ}` are positive.
    pub fn order_along(&self, v: &MonomialSeries, left: &MonomialSeries, right: &MonomialSeries) -> ExtRational {
        let (beta, a, alpha, kappa, side) = match *self {
            SliceFormula::Point { q, .. } => return q,
            SliceFormula::Standard { beta, a, alpha, kappa, side, .. } => (beta, a, alpha, kappa, side),
        };
        let num = match side {
            Side::Plus => v.sub(left),
            Side::Minus => right.sub(v),
        };
        let den = right.sub(left).order();
        let w = match (num.order(), den) {
            (Inf, _) => Inf,
            (Fin(n), Fin(d)) => Fin(beta + n - d),
            (Fin(_), Inf) => Inf,
        };
        let y = w.min(kappa);
        match div_q(y, a) {
            Fin(t) => Fin(alpha + t),
            Inf => Inf,
        }
    }

    /// `f` at parameter `u` given `v − left` and `right − left` there.
    ///
    /// Graded slices use `h(u, v) = (u, A·u^κ + v(B − A·u^{κ−β}))` with
    /// `A^{1/a} = grade(q̃)`, `B^{1/a} = grade(q̲)`, so the boundary values are
    /// `grade(q)·u^q`.
    pub fn eval_offsets(&self, u: f64, from_left: f64, span: f64) -> f64 {
        let (beta, a, alpha, kappa, side, graded) = match *self {
            SliceFormula::Point { q, graded } => {
                let c = match (graded, q) {
                    (true, Fin(q)) => ratio_to_f64(&grade(q)),
                    _ => 1.0,
                };
                return c * pow_ext(u, q);
            }
            SliceFormula::Standard { beta, a, alpha, kappa, side, graded } => (beta, a, alpha, kappa, side, graded),
        };
        let t = match side {
            Side::Plus => from_left / span,
            Side::Minus => (span - from_left) / span,
        };
        let inv_a = 1.0 / ratio_to_f64(&a);
        let scale = |mu: Q| if graded { ratio_to_f64(&grade(alpha + mu / a)).powf(1.0 / inv_a) } else { 1.0 };
        let fb = ratio_to_f64(&beta);
        let w = u.powf(fb) * t;
        let y = match kappa {
            Fin(k) => {
                let (ca, cb) = (scale(k), scale(beta));
                let k = ratio_to_f64(&k);
                ca * u.powf(k) + w * (cb - ca * u.powf(k - fb))
            }
            Inf => w * scale(beta),
        };
        u.powf(ratio_to_f64(&alpha)) * y.powf(inv_a)
    }

    /// `f` at `u` along `v(u)`, with the offsets computed exactly first.
    pub fn eval_along(&self, u: f64, v: &MonomialSeries, left: &MonomialSeries, right: &MonomialSeries) -> f64 {
        self.eval_offsets(u, v.sub(left).eval_f64(u), right.sub(left).eval_f64(u))
    }
}

pub(crate) fn pow_ext(u: f64, e: ExtRational) -> f64 {
    match e {
        Fin(e) => u.powf(ratio_to_f64(&e)),
        Inf => 0.0,
    }
}

/// `left + ½·u^d·(right − left)` (from the left) or the mirror image: an arc
/// at tangency order `β + d` from the chosen end.
pub fn test_arc(left: &MonomialSeries, right: &MonomialSeries, d: Q, from_right: bool) -> MonomialSeries {
    let half = Q::new(1, 2);
    let step = right.sub(left).mul_monomial(d, half);
    if from_right {
        right.sub(&step)
    } else {
        left.add(&step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi, AffineMap};

    fn mono(e: Q) -> MonomialSeries {
        MonomialSeries::power(Fin(e))
    }

    #[test]
    fn identity_width_gives_order_equal_to_width() {
        // β = 1 between v = 0 and v = u; μ(q) = q, so f = v.
        let f = SliceFormula::new(qi(1), Fin(qi(1)), Fin(qi(2)), Width::Affine(AffineMap::identity()), false).unwrap();
        assert!(matches!(f, SliceFormula::Standard { side: Side::Minus, kappa: Fin(k), .. } if k == qi(2)));
        let (l, r) = (MonomialSeries::zero(), mono(qi(1)));
        for w in [q(3, 2), qi(2)] {
            // Arcs near the right end (the supporting arc).
            let v = r.sub(&MonomialSeries::monomial(w, qi(1)));
            assert_eq!(f.order_along(&v, &l, &r), Fin(w));
        }
        assert_eq!(f.order_along(&l, &l, &r), Fin(qi(1)));
        assert_eq!(f.order_along(&r, &l, &r), Fin(qi(2)));
    }

    #[test]
    fn boundary_values_are_the_slice_orders() {
        // μ(q) = −q + 6 on [3, 4]: widths 3 and 2.
        let m = Width::Affine(AffineMap::new(qi(-1), qi(6)));
        let f = SliceFormula::new(qi(2), Fin(qi(3)), Fin(qi(4)), m, false).unwrap();
        let (l, r) = (mono(qi(1)), mono(qi(1)).add(&mono(qi(2))));
        assert_eq!(f.order_along(&l, &l, &r), Fin(qi(3)));
        assert_eq!(f.order_along(&r, &l, &r), Fin(qi(4)));
        let mid = test_arc(&l, &r, q(1, 2), false);
        // Width 5/2 from the supporting arc means order μ⁻¹(5/2) = 7/2.
        assert_eq!(f.order_along(&mid, &l, &r), Fin(q(7, 2)));
        let u: f64 = 1e-4;
        let val = f.eval_along(u, &l, &l, &r);
        assert!((val / u.powi(3) - 1.0).abs() < 1e-6, "{val}");
        // Graded: boundary values pick up grade(q).
        let g = SliceFormula::new(qi(2), Fin(qi(3)), Fin(qi(4)), m, true).unwrap();
        let at_left = g.eval_along(u, &l, &l, &r) / u.powi(3);
        let at_right = g.eval_along(u, &r, &l, &r) / u.powi(4);
        assert!((at_left / ratio_to_f64(&grade(qi(3))) - 1.0).abs() < 1e-6, "{at_left}");
        assert!((at_right / ratio_to_f64(&grade(qi(4))) - 1.0).abs() < 1e-6, "{at_right}");
        assert_eq!(g.order_along(&mid, &l, &r), Fin(q(7, 2)));
    }

    #[test]
    fn grades_decrease() {
        assert_eq!(grade(qi(1)), q(1, 16));
        assert_eq!(grade(q(3, 2)), q(1, 64));
        assert!(grade(qi(100)) > Q::zero());
    }

    #[test]
    fn width_minimum_must_be_beta() {
        let m = Width::Affine(AffineMap::identity());
        assert!(SliceFormula::new(qi(2), Fin(qi(1)), Fin(qi(2)), m, false).is_err());
    }

    #[test]
    fn point_formula() {
        let f = SliceFormula::new(qi(1), Fin(qi(2)), Fin(qi(2)), Width::Point, false).unwrap();
        assert_eq!(f.order_along(&MonomialSeries::zero(), &MonomialSeries::zero(), &mono(qi(1))), Fin(qi(2)));
        assert!((f.eval_offsets(0.1, 0.0, 1.0) - 0.01).abs() < 1e-15);
    }
}
