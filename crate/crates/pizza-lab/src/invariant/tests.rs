use super::*;
use crate::blocks::permutations;
use crate::exact::{q, qi, AffineMap, ExtRational, Fin, Q};
use crate::fixtures;
use crate::pizza::{build_twin_pre_pizza, from_transverse_profile, Width};
use Sign::{Minus, Plus};

fn ext(v: &[Q]) -> Vec<ExtRational> {
    v.iter().map(|&x| Fin(x)).collect()
}

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

/// Every `ϖ` satisfying the determination conditions, by exhaustion.
fn determined_by_search(p: &AbstractPizza, t: &Triple) -> Vec<Permutation> {
    let n = build_twin_pre_pizza(p).unwrap().len();
    permutations(n).filter(|w| check_determined(p, t, w).unwrap().is_empty()).collect()
}

#[test]
fn varpi_fixture_caravans() {
    let p = fixtures::varpi();
    let c = compute_caravans(&p).unwrap();
    // T₁ is not tied: M₁ (zone 0) is left-adjacent and M₂ right-adjacent.
    assert!(c.iter().all(|c| c.slices.len() == 1), "{c:?}");
    let right2 = c.iter().find(|c| c.direction == Direction::Rightward && c.slices == [2]).unwrap();
    assert_eq!(right2.adjacent, vec![2]);
}

#[test]
fn varpi_fixture_triple() {
    let p = fixtures::varpi();
    let t = Triple::identity(2, vec![Plus, Minus]);
    assert!(check_allowable(&p, &t).unwrap().is_empty());
    let lay = layout(&p, &t).unwrap();
    assert_eq!(lay.j_minus, vec![1, 2]);
    assert_eq!(compute_omega(&p, &t).unwrap().one_based(), vec![1, 2, 4, 3]);
    assert_eq!(compute_varpi(&p, &t).unwrap().images(), &[0, 1, 3, 2, 4]);
    assert_eq!(determined_by_search(&p, &t), vec![perm(&[0, 1, 3, 2, 4])]);
}

#[test]
fn varpi_fixture_sign_mutations() {
    let p = fixtures::varpi();
    // (+,+) is allowable too; it gives the identity arc permutation.
    let t = Triple::identity(2, vec![Plus, Plus]);
    assert_eq!(compute_varpi(&p, &t).unwrap(), Permutation::identity(5));
    for s in [vec![Minus, Minus], vec![Minus, Plus]] {
        let t = Triple::identity(2, s);
        let r = check_admissible(&p, &t).unwrap();
        assert!(!r.passes(), "{t}");
        if r.allowability.is_empty() {
            assert!(determined_by_search(&p, &t).is_empty());
        }
    }
}

#[test]
fn low_beta_instantiation_ties_the_coherent_slices() {
    let p = fixtures::varpi_with_low_beta();
    let c = compute_caravans(&p).unwrap();
    assert!(c.iter().any(|c| c.slices == [1, 2]), "{c:?}");
    let v = check_allowable(&p, &Triple::identity(2, vec![Plus, Minus])).unwrap();
    assert!(v.iter().any(|v| v.clause == Clause::A1), "{v:?}");
    assert_eq!(build_twin_pre_pizza(&p).unwrap().len(), 5);
}

#[test]
fn varpi2_fixture_triple() {
    let p = fixtures::varpi2();
    let t = Triple::identity(1, vec![Minus]);
    let r = check_admissible(&p, &t).unwrap();
    assert!(r.passes(), "{:?}", r.failure());
    assert_eq!(layout(&p, &t).unwrap().j_minus, vec![0]);
    let w = r.varpi.unwrap();
    assert_eq!(w.images(), &[0, 2, 1, 3]);
    assert_eq!(determined_by_search(&p, &t), vec![w]);
}

#[test]
fn totally_transverse_varpi_is_the_profile_permutation() {
    let (b, qs) = fixtures::pi_profile();
    let p = from_transverse_profile(&b, &qs).unwrap();
    let t = Triple::new(Permutation::from_one_based(&[1, 4, 2, 5, 3]).unwrap(), perm(&[]), vec![]).unwrap();
    let r = check_admissible(&p, &t).unwrap();
    assert!(r.passes(), "{:?}", r.failure());
    assert_eq!(r.varpi.unwrap().images(), &fixtures::PI);
    assert_eq!(compute_omega(&p, &t).unwrap(), t.sigma);
}

#[test]
fn block_failure_names_the_quadruple() {
    let p = from_transverse_profile(&[qi(2), qi(1), qi(1)], &ext(&[q(5, 2), q(5, 2), qi(2), qi(1)])).unwrap();
    let t = Triple::new(Permutation::from_one_based(&[1, 3, 2]).unwrap(), perm(&[]), vec![]).unwrap();
    let r = check_admissible(&p, &t).unwrap();
    assert_eq!(r.varpi.as_ref().unwrap().images(), &[0, 2, 1, 3]);
    assert!(!r.passes());
    let v = r.blocks.iter().find(|v| (v.i, v.j) == (0, 1)).unwrap();
    assert_eq!((v.outer, v.inner), (Fin(qi(2)), Fin(qi(1))));
    assert!(v.l <= 2, "{v}");
}

#[test]
fn shared_maximum_forces_equal_signs() {
    let half = Width::Affine(AffineMap::new(q(1, 2), q(1, 2)));
    let p = AbstractPizza::new(ext(&[qi(1), qi(3), qi(1)]), vec![qi(1), qi(1)], vec![half, half]).unwrap();
    assert!(p.is_valid() && p.is_minimal());
    assert_eq!(p.maximum_zones(), vec![1]);
    let v = check_allowable(&p, &Triple::identity(1, vec![Plus, Minus])).unwrap();
    assert!(v.iter().any(|v| v.clause == Clause::A3), "{v:?}");
    let t = Triple::identity(1, vec![Plus, Plus]);
    assert!(check_admissible(&p, &t).unwrap().passes());
    // Both boundary zones are transverse minima next to coherent slices.
    assert_eq!(compute_varpi(&p, &t).unwrap(), Permutation::identity(5));
}

#[test]
fn shape_mismatch_is_an_error() {
    let p = fixtures::varpi();
    assert!(matches!(check_allowable(&p, &Triple::identity(1, vec![Plus, Minus])), Err(InvariantError::Shape(_))));
}

#[test]
fn bundle_round_trip_and_equivalence() {
    let p = fixtures::varpi();
    let b = InvariantBundle::new(p.clone(), p.clone(), Triple::identity(2, vec![Plus, Minus])).unwrap();
    let s = serde_json::to_string(&b).unwrap();
    assert!(s.contains("\"varpi\":[0,1,3,2,4]") && s.contains("\"sign\":[\"+\",\"-\"]"), "{s}");
    let back: InvariantBundle = serde_json::from_str(&s).unwrap();
    assert!(equivalent_bundles(&b, &back));
    let mut flipped = b.clone();
    flipped.triple.sign[1] = Plus;
    assert_eq!(bundle_difference(&b, &flipped).as_deref(), Some("sign[2]: - vs +"));
    let tampered = s.replace("[0,1,3,2,4]", "[0,1,2,3,4]");
    assert!(serde_json::from_str::<InvariantBundle>(&tampered).is_err());
}
