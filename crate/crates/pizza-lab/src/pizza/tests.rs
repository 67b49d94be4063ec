use super::*;
use crate::exact::{q, qi, AffineMap, ExtRational, Q};
use crate::fixtures;

fn ext(v: &[Q]) -> Vec<ExtRational> {
    v.iter().map(|&x| Fin(x)).collect()
}

fn id() -> Width {
    Width::Affine(AffineMap::identity())
}

#[test]
fn single_transverse_point_slice_is_valid() {
    let p = AbstractPizza::new(ext(&[qi(2), qi(2)]), vec![qi(2)], vec![Width::Point]).unwrap();
    assert!(p.is_valid());
    assert_eq!(p.slice_class(1), Ok(SliceClass::Transverse));
}

#[test]
fn width_above_order_is_reported() {
    // μ(q) = q + 1/2 on [2, 3] exceeds q everywhere.
    let m = AffineMap::new(qi(1), q(1, 2));
    let p = AbstractPizza::new(ext(&[qi(2), qi(3)]), vec![q(5, 2)], vec![Width::Affine(m)]).unwrap();
    let v = p.validate();
    assert!(v.iter().any(|v| v.to_string() == "width exceeds order at 1"), "{v:?}");
}

#[test]
fn fixtures_are_valid_and_minimal() {
    for p in [fixtures::varpi(), fixtures::varpi2(), fixtures::varpi_with_low_beta()] {
        assert!(p.is_valid(), "{:?}", p.validate());
        assert!(p.is_minimal());
    }
}

#[test]
fn varpi_fixture_zones_and_slices() {
    let p = fixtures::varpi();
    let c: Vec<_> = (0..=3).map(|z| p.zone_class(z).unwrap()).collect();
    assert!(c[0].is_maximum() && c[2].is_maximum());
    assert!(!c[1].is_maximum() && c[1].transverse);
    assert!(!c[3].is_maximum());
    assert!(p.is_coherent(1) && p.is_coherent(2) && !p.is_coherent(3));
    // The inequalities the example is built on.
    assert!(p.beta(2) > p.beta(1) && p.beta(2) > p.beta(3));
    assert!(p.q(2) > p.q(0) && p.q(0) == p.q(1) && p.q(1) > p.q(3));
}

#[test]
fn varpi2_fixture_zones_and_slices() {
    let p = fixtures::varpi2();
    assert_eq!(p.maximum_zones(), vec![1]);
    assert!(p.zone_class(1).unwrap().transverse && p.zone_class(2).unwrap().transverse);
    assert_eq!(p.coherent_slices(), vec![2]);
    assert!(p.beta(1) == p.beta(2) && p.beta(2) > p.beta(3));
    assert!(p.q(1) > p.q(0) && p.q(0) > p.q(3));
}

#[test]
fn reduction_clauses() {
    let pts = AbstractPizza::new(ext(&[qi(2), qi(2), qi(2)]), vec![qi(1), q(3, 2)], vec![Width::Point; 2])
        .unwrap();
    assert_eq!(pts.reducible_at(1), Ok(Some(Reduction::A)));
    let merged = pts.minimize();
    assert_eq!(merged.p(), 1);
    assert_eq!(merged.beta(1), qi(1));

    // Identity widths on [1,2] and [2,3] join into one affine graph.
    let d = AbstractPizza::new(ext(&[qi(1), qi(2), qi(3)]), vec![qi(1), qi(2)], vec![id(), id()]).unwrap();
    assert_eq!(d.reducible_at(1), Ok(Some(Reduction::D)));
    let m = d.minimize();
    assert_eq!(m.qs(), ext(&[qi(1), qi(3)]).as_slice());
    assert_eq!(m.beta(1), qi(1));

    assert!(matches!(d.reducible_at(2), Err(PizzaError::Index { .. })));
}

#[test]
fn equal_orders_with_beta_at_nu_reduce() {
    // q₀ = q₁ and min(ν₀, ν₁) = β₁: the point slice is absorbed.
    let p = AbstractPizza::new(ext(&[qi(2), qi(2), qi(3)]), vec![qi(2), qi(2)], vec![Width::Point, id()]).unwrap();
    assert!(p.is_valid());
    assert_eq!(p.nu(1).min(p.nu(0)), Fin(p.beta(1)));
    assert!(matches!(p.reducible_at(1), Ok(Some(Reduction::A | Reduction::B | Reduction::C))));
}

#[test]
fn boundary_zone_branches() {
    let p = AbstractPizza::new(ext(&[qi(3), qi(3)]), vec![qi(1)], vec![Width::Point]).unwrap();
    // β₁ < q₀ ≥ q₁ with equality: a maximum on both ends.
    assert!(p.zone_class(0).unwrap().is_maximum());
    assert!(p.zone_class(1).unwrap().is_maximum());
    let up = AbstractPizza::new(ext(&[qi(2), qi(3)]), vec![qi(2)], vec![id()]).unwrap();
    assert!(!up.zone_class(0).unwrap().is_maximum());
    assert!(up.zone_class(1).unwrap().is_maximum());
}

#[test]
fn twin_pre_pizza_of_varpi() {
    let tp = build_twin_pre_pizza(&fixtures::varpi()).unwrap();
    assert_eq!(tp.len(), 5);
    let zones: Vec<_> = tp.arcs.iter().map(|a| a.zone).collect();
    assert_eq!(zones, vec![0, 1, 1, 2, 3]);
    let twins: Vec<_> = tp.arcs.iter().map(|a| a.twin).collect();
    assert_eq!(twins, vec![false, false, true, false, false]);
    let classes: Vec<_> = tp.pairs.iter().map(|p| p.class).collect();
    assert_eq!(
        classes,
        vec![PairClass::Primary, PairClass::TwinPair, PairClass::Primary, PairClass::TransverseSlice]
    );
    assert_eq!(tp.betahats(), vec![qi(1), qi(3), qi(3), q(3, 2)]);
    assert_eq!(twin_count_formula(&fixtures::varpi()), CountTerms { l: 2, n2: 0, m2: 0, m0: 0, delta: 1 });
}

#[test]
fn twin_pre_pizza_of_varpi2() {
    let p = fixtures::varpi2();
    let tp = build_twin_pre_pizza(&p).unwrap();
    assert_eq!(tp.len(), 4);
    assert_eq!(tp.twin_count(), 0);
    assert_eq!(twin_count_formula(&p).value(), 4);
}

#[test]
fn totally_transverse_pre_pizza_keeps_boundary_and_maxima() {
    let (b, qs) = fixtures::pi_profile();
    let p = from_transverse_profile(&b, &qs).unwrap();
    let tp = build_twin_pre_pizza(&p).unwrap();
    assert_eq!(tp.q, qs);
    assert_eq!(tp.betahats(), b);
    assert!(tp.pairs.iter().all(|x| x.class != PairClass::Primary));
    assert_eq!(twin_count_formula(&p).value(), tp.len());
}

#[test]
fn transverse_profiles() {
    let p = from_transverse_profile(&[qi(2)], &ext(&[qi(2), qi(2)])).unwrap();
    assert_eq!(p.p(), 1);
    // One boundary maximum: the slice count is 2n − 1 = 1.
    let p = from_transverse_profile(&[qi(2)], &ext(&[qi(3), qi(2)])).unwrap();
    assert_eq!(p.p(), 1);
    let p = from_transverse_profile(&[qi(2), qi(1)], &ext(&[qi(3), qi(4), qi(2)])).unwrap();
    assert_eq!(p.p(), 4);
    assert_eq!(p.maximum_zones(), vec![0, 2, 4]);
    assert!(p.is_minimal() && p.is_totally_transverse());
    assert!(from_transverse_profile(&[qi(2), qi(1)], &ext(&[qi(3), qi(2), qi(2)])).is_err());
}

#[test]
fn twin_data_rebuilds_the_pizza() {
    for p in [fixtures::varpi(), fixtures::varpi2()] {
        let tp = build_twin_pre_pizza(&p).unwrap();
        let (back, reps) = twin_to_pizza(&tp.q, &tp.pairs).unwrap();
        assert!(back.equivalent(&p), "{:?}", back.difference(&p));
        assert_eq!(reps.len(), p.p() + 1);
    }
}

#[test]
fn json_round_trip_and_field_errors() {
    let p = fixtures::varpi();
    let s = serde_json::to_string(&p).unwrap();
    let back: AbstractPizza = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    let bad = s.replacen("\"3/2\"", "\"3/0\"", 1);
    let err = serde_json::from_str::<AbstractPizza>(&bad).unwrap_err().to_string();
    assert!(err.contains("q[3]") && err.contains("3/0"), "{err}");
}

#[test]
fn slice_options_are_valid() {
    let menu = fixtures::menu();
    for &a in &menu {
        for &b in &menu {
            for (beta, mu) in slice_options(a, b, &menu) {
                let p = AbstractPizza::new(ext(&[a, b]), vec![beta], vec![mu]).unwrap();
                assert!(p.is_valid(), "{:?}", p.validate());
            }
        }
    }
}
