//! Piecewise realization of an abstract pizza as a function on a triangle.

use serde::Serialize;

use super::slice::{graded_power, test_arc, SliceFormula};
use super::RealizationError;
use crate::exact::{ExtRational, Fin, MonomialSeries, Q};
use crate::pizza::AbstractPizza;

/// `f` on `{0 ≤ v ≤ v_p(u)}`: delimiting arcs `v = v_ℓ(u)` and one formula
/// per slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiecewiseFunctionRealization {
    pub pizza: AbstractPizza,
    /// `v_0, …, v_p`.
    pub arcs: Vec<MonomialSeries>,
    /// Formula of slice `ℓ` at index `ℓ − 1`.
    pub slices: Vec<SliceFormula>,
}

/// Cumulative sums `v_k = Σ_{j≤k} grade(e_j)·u^{e_j}`, `v_0 = 0`: all
/// coefficients are positive, so `tord(v_i, v_j) = min_{i<k≤j} e_k`.
pub fn cumulative_arcs(exponents: &[Q]) -> Vec<MonomialSeries> {
    let mut out = vec![MonomialSeries::zero()];
    for &e in exponents {
        let next = out.last().expect("seeded").add(&graded_power(Fin(e)));
        out.push(next);
    }
    out
}

pub fn realize_function(p: &AbstractPizza) -> Result<PiecewiseFunctionRealization, RealizationError> {
    if let Some(v) = p.validate().first() {
        return Err(RealizationError::Slice(format!("invalid pizza: {v}")));
    }
    let arcs = cumulative_arcs(p.betas());
    let slices = (1..=p.p())
        .map(|l| {
            let (a, b) = p.interval(l);
            SliceFormula::new(p.beta(l), a, b, p.mu(l), false)
        })
        .collect::<Result<_, _>>()?;
    Ok(PiecewiseFunctionRealization { pizza: p.clone(), arcs, slices })
}

impl PiecewiseFunctionRealization {
    pub fn p(&self) -> usize {
        self.slices.len()
    }

    pub fn formula(&self, slice: usize) -> &SliceFormula {
        &self.slices[slice - 1]
    }

    /// Exact order of `f` along `v(u)` inside slice `ℓ`.
    pub fn order_along(&self, slice: usize, v: &MonomialSeries) -> ExtRational {
        self.formula(slice).order_along(v, &self.arcs[slice - 1], &self.arcs[slice])
    }

    pub fn eval_along(&self, slice: usize, v: &MonomialSeries, u: f64) -> f64 {
        self.formula(slice).eval_along(u, v, &self.arcs[slice - 1], &self.arcs[slice])
    }

    /// Orders of `f` on `λ_ℓ` as seen from the slices on either side.
    pub fn arc_orders(&self, zone: usize) -> Vec<ExtRational> {
        let v = &self.arcs[zone];
        let mut out = Vec::new();
        if zone >= 1 {
            out.push(self.order_along(zone, v));
        }
        if zone < self.p() {
            out.push(self.order_along(zone + 1, v));
        }
        out
    }

    /// Zones where some adjacent slice formula misses `q_ℓ`.
    pub fn boundary_mismatches(&self) -> Vec<String> {
        (0..=self.p())
            .filter_map(|z| {
                let got = self.arc_orders(z);
                let want = self.pizza.q(z);
                got.iter().any(|&g| g != want).then(|| format!("zone {z}: orders {got:?}, expected {want}"))
            })
            .collect()
    }

    /// Test arc at order `β_ℓ + d` from one end of slice `ℓ`.
    pub fn test_arc(&self, slice: usize, d: Q, from_right: bool) -> MonomialSeries {
        test_arc(&self.arcs[slice - 1], &self.arcs[slice], d, from_right)
    }

    /// Slice containing the point `(u, v)`, if `0 ≤ v ≤ v_p(u)`.
    pub fn slice_at(&self, u: f64, v: f64) -> Option<usize> {
        if v < 0.0 || v > self.arcs[self.p()].eval_f64(u) {
            return None;
        }
        (1..=self.p()).find(|&l| v <= self.arcs[l].eval_f64(u)).or(Some(self.p()))
    }

    /// Pointwise value `f(u, v)` in plain floating point.
    pub fn eval(&self, u: f64, v: f64) -> Option<f64> {
        let l = self.slice_at(u, v)?;
        let left = self.arcs[l - 1].eval_f64(u);
        let span = self.arcs[l].sub(&self.arcs[l - 1]).eval_f64(u);
        Some(self.formula(l).eval_offsets(u, v - left, span))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi, AffineMap, Inf};
    use crate::fixtures;
    use crate::pizza::Width;

    #[test]
    fn point_slice_is_a_power() {
        let p = AbstractPizza::new(vec![Fin(qi(2)), Fin(qi(2))], vec![qi(1)], vec![Width::Point]).unwrap();
        let r = realize_function(&p).unwrap();
        for (u, t) in [(0.1, 0.5), (0.01, 0.0), (0.2, 1.0)] {
            let v = t * r.arcs[1].eval_f64(u);
            assert!((r.eval(u, v).unwrap() - u * u).abs() < 1e-15);
        }
        assert_eq!(r.eval(0.1, 1.0), None);
    }

    #[test]
    fn identity_width_pulls_back_v() {
        let p = AbstractPizza::new(vec![Fin(qi(1)), Fin(qi(2))], vec![qi(1)], vec![Width::Affine(AffineMap::identity())])
            .unwrap();
        let r = realize_function(&p).unwrap();
        assert!(r.boundary_mismatches().is_empty());
        // Along v = v₁ − c·u^w (width w from the supporting arc) the order is w.
        for w in [qi(1), q(3, 2), qi(2)] {
            let v = r.arcs[1].sub(&MonomialSeries::monomial(w, Q::new(1, 64)));
            assert_eq!(r.order_along(1, &v), Fin(w));
        }
    }

    #[test]
    fn fixtures_have_exact_boundary_orders() {
        for p in [fixtures::varpi(), fixtures::varpi2(), fixtures::varpi_with_low_beta()] {
            let r = realize_function(&p).unwrap();
            assert!(r.boundary_mismatches().is_empty(), "{:?}", r.boundary_mismatches());
        }
    }

    #[test]
    fn unbounded_order_at_a_boundary() {
        let p = AbstractPizza::new(vec![Fin(qi(1)), Inf], vec![qi(1)], vec![Width::Affine(AffineMap::identity())]).unwrap();
        let r = realize_function(&p).unwrap();
        assert!(r.boundary_mismatches().is_empty());
        let top = r.arcs[1].eval_f64(0.1);
        assert_eq!(r.eval(0.1, top), Some(0.0));
    }
}
