//! Property tests over randomly drawn pizzas, permutations and triples.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pizza_lab::blocks::{is_block, minimal_block, Permutation, Segment};
use pizza_lab::exact::{format_q, parse_q, q, Q};
use pizza_lab::fixtures;
use pizza_lab::invariant::{equivalent_bundles, InvariantBundle};
use pizza_lab::pizza::{build_twin_pre_pizza, random_pizza, twin_count_formula, AbstractPizza};
use pizza_lab::realization::{realize_general, PairEmbedding};
use pizza_lab::sweep::admissible_triples;
use pizza_lab::verify::{default_grid, verify_embedding, DEFAULT_TOL};

fn pizza(seed: u64, p: usize) -> AbstractPizza {
    random_pizza(&mut ChaCha8Rng::seed_from_u64(seed), &fixtures::menu(), p)
}

fn permutation() -> impl Strategy<Value = Permutation> {
    (1usize..8).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

/// Smallest segment containing `j` whose image is again a segment, by scanning all of them.
fn brute_minimal_block(chi: &Permutation, j: &[usize]) -> Segment {
    let n = chi.len();
    let (lo, hi) = (*j.iter().min().unwrap(), *j.iter().max().unwrap());
    let mut best: Option<Segment> = None;
    for a in 0..=lo {
        for b in hi..n {
            let img: Vec<usize> = (a..=b).map(|i| chi.apply(i)).collect();
            let (mn, mx) = (*img.iter().min().unwrap(), *img.iter().max().unwrap());
            if mx - mn == b - a && best.is_none_or(|s| s.len() > b - a + 1) {
                best = Some(Segment::new(a, b));
            }
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimal_block_matches_brute_force(chi in permutation(), a in 0usize..8, b in 0usize..8) {
        let n = chi.len();
        let j = [a % n, b % n];
        let got = minimal_block(&chi, &j).unwrap();
        prop_assert_eq!(got, brute_minimal_block(&chi, &j));
        prop_assert!(is_block(&chi, got).unwrap());
    }

    #[test]
    fn inverse_composes_to_identity(chi in permutation()) {
        prop_assert!(chi.compose(&chi.inverse()).is_identity());
        prop_assert!(chi.inverse().compose(&chi).is_identity());
        prop_assert_eq!(Permutation::from_one_based(&chi.one_based()).unwrap(), chi);
    }

    #[test]
    fn rationals_round_trip_through_text(n in -500i64..500, d in 1i64..60) {
        let v: Q = q(n, d);
        prop_assert_eq!(parse_q(&format_q(&v)).unwrap(), v);
    }

    #[test]
    fn twin_tables_are_ultrametric_and_counted(seed in any::<u64>(), p in 1usize..5) {
        let pz = pizza(seed, p);
        if let Ok(tp) = build_twin_pre_pizza(&pz) {
            prop_assert!(tp.tord_table().is_ultrametric());
            prop_assert_eq!(twin_count_formula(&pz).value(), tp.len());
        }
    }

    #[test]
    fn minimization_is_idempotent_and_confluent(seed in any::<u64>(), p in 1usize..6) {
        let pz = pizza(seed, p);
        let m = pz.minimize();
        prop_assert!(m.is_minimal());
        prop_assert!(m.minimize() == m);
        prop_assert!(m.equivalent(&pz.minimize()));
        for other in pz.all_minimizations() {
            prop_assert!(other.equivalent(&m), "{:?} vs {:?}", other, m);
        }
    }

    #[test]
    fn pizza_json_round_trips(seed in any::<u64>(), p in 1usize..6) {
        let pz = pizza(seed, p);
        let back: AbstractPizza = serde_json::from_str(&serde_json::to_string(&pz).unwrap()).unwrap();
        prop_assert_eq!(back, pz);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Realize every admissible triple, read the invariant back from the arcs
    /// alone, and compare with the bundle used to build them.
    #[test]
    fn realizations_recover_their_bundle(seed in any::<u64>(), p in 1usize..4) {
        let pz = pizza(seed, p).minimize();
        for t in admissible_triples(&pz).into_iter().take(3) {
            let (e, bundle) = realize_general(&pz, &t).unwrap();
            let report = verify_embedding(&e, &default_grid(), DEFAULT_TOL).unwrap();
            prop_assert!(report.passes(), "{:?}", report.first_failure());
            prop_assert!(equivalent_bundles(report.bundle(), &bundle));

            let e2: PairEmbedding = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
            prop_assert_eq!(&e2, &e);
            let b2: InvariantBundle = serde_json::from_str(&serde_json::to_string(&bundle).unwrap()).unwrap();
            prop_assert_eq!(b2, bundle);
        }
    }
}
