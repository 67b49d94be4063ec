//! Floating-point cross-checks of exact orders: least-squares slopes of
//! `log|a(u) − b(u)|` against `log u`.

use serde::Serialize;

use crate::exact::{arc_tord, ExtRational, Fin, MonoArc, MonomialSeries, Q};
use crate::par::Exec;
use crate::realization::{PairEmbedding, PiecewiseFunctionRealization};

pub const DEFAULT_TOL: f64 = 0.05;

/// `u = 10^{−2}, …, 10^{−6}`.
pub fn default_grid() -> Vec<f64> {
    (2..=6).map(|k| 10f64.powi(-k)).collect()
}

/// Slope of the least-squares line through `(ln u, ln y)`; `None` when some
/// sample is not a positive finite number.
pub fn fit_slope(grid: &[f64], values: &[f64]) -> Option<f64> {
    if grid.len() < 2 || values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = grid.iter().map(|u| u.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub what: String,
    pub exact: ExtRational,
    /// `None` when sampling produced a non-positive or non-finite value.
    pub sampled: Option<f64>,
}

fn compare(what: impl FnOnce() -> String, exact: ExtRational, sampled: Option<f64>, tol: f64) -> Option<Discrepancy> {
    let Fin(e) = exact else { return None };
    let ok = sampled.is_some_and(|s| (s - crate::exact::ratio_to_f64(&e)).abs() <= tol);
    (!ok).then(|| Discrepancy { what: what(), exact, sampled })
}

/// `|a(u) − b(u)|` with the difference taken exactly before evaluation.
pub fn distance_samples(a: &MonoArc, b: &MonoArc, grid: &[f64]) -> Vec<f64> {
    let diffs: Vec<MonomialSeries> = a.coords().iter().zip(b.coords()).map(|(x, y)| x.sub(y)).collect();
    grid.iter().map(|&u| diffs.iter().map(|d| d.eval_f64(u).powi(2)).sum::<f64>().sqrt()).collect()
}

/// Every arc pair of `E` with finite exact tangency order whose sampled
/// slope is off by more than `tol`.
pub fn numeric_check(e: &PairEmbedding, grid: &[f64], tol: f64) -> Vec<Discrepancy> {
    numeric_check_with(e, grid, tol, Exec::default())
}

pub fn numeric_check_with(e: &PairEmbedding, grid: &[f64], tol: f64, exec: Exec) -> Vec<Discrepancy> {
    let arcs: Vec<_> = e.all_arcs().collect();
    let n = arcs.len();
    exec.map_range(n, |i| {
        let mut out = Vec::new();
        for j in i + 1..n {
            let (a, b) = (arcs[i], arcs[j]);
            let Ok(exact) = arc_tord(&a.coords, &b.coords) else { continue };
            let sampled = fit_slope(grid, &distance_samples(&a.coords, &b.coords, grid));
            out.extend(compare(|| format!("{} ~ {}", a.name, b.name), exact, sampled, tol));
        }
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Sampled order of `f` along each delimiting arc and along three test
/// arcs per slice, against the exact orders.
pub fn function_numeric_check(r: &PiecewiseFunctionRealization, grid: &[f64], tol: f64) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let sample = |slice: usize, v: &MonomialSeries| -> Option<f64> {
        let vals: Vec<f64> = grid.iter().map(|&u| r.eval_along(slice, v, u)).collect();
        fit_slope(grid, &vals)
    };
    for z in 0..=r.p() {
        let slice = if z == 0 { 1 } else { z };
        let v = &r.arcs[z];
        out.extend(compare(|| format!("f on lambda_{z}"), r.order_along(slice, v), sample(slice, v), tol));
    }
    for l in 1..=r.p() {
        for (d, right) in [(Q::new(1, 2), false), (Q::new(1, 2), true), (Q::from_integer(1), false)] {
            let v = r.test_arc(l, d, right);
            let what = || format!("f on slice {l} test arc d={d} from {}", if right { "right" } else { "left" });
            out.extend(compare(what, r.order_along(l, &v), sample(l, &v), tol));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn slope_of_a_square() {
        let a = MonoArc::new(vec![MonomialSeries::zero()]).unwrap();
        let b = MonoArc::new(vec![MonomialSeries::power(Fin(qi(2)))]).unwrap();
        let g = default_grid();
        let s = fit_slope(&g, &distance_samples(&a, &b, &g)).unwrap();
        assert!((s - 2.0).abs() < 1e-9, "{s}");
        assert_eq!(fit_slope(&g, &[0.0; 5]), None);
    }

    #[test]
    fn model_pair_samples_agree() {
        let e = crate::realization::model_pair(ExtRational::int(3), ExtRational::new(5, 2), qi(1)).unwrap();
        assert!(numeric_check(&e, &default_grid(), DEFAULT_TOL).is_empty());
    }

    #[test]
    fn fixture_functions_sample_correctly() {
        for p in [crate::fixtures::varpi(), crate::fixtures::varpi2()] {
            let r = crate::realization::realize_function(&p).unwrap();
            let d = function_numeric_check(&r, &default_grid(), DEFAULT_TOL);
            assert!(d.is_empty(), "{d:?}");
        }
    }
}
