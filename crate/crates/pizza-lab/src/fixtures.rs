//! Hand-instantiated pizzas used by tests, benches and documentation.

use crate::exact::{q, qi, AffineMap, ExtRational, Q};
use crate::pizza::{AbstractPizza, Width};

fn ext(v: &[Q]) -> Vec<ExtRational> {
    v.iter().map(|&x| ExtRational::Fin(x)).collect()
}

fn id() -> Width {
    Width::Affine(AffineMap::identity())
}

/// A point slice followed by two non-point slices, with `D₁` a transverse
/// minimum between the two coherent slices (so it carries twins).
///
/// `q = (3, 3, 4, 3/2)`, `β = (1, 3, 3/2)`, `μ₂` through `(3,3)–(4,7/2)`,
/// `μ₃ = id`. Pairs with `σ = id`, `υ = id`, `s = (+, −)`.
pub fn varpi() -> AbstractPizza {
    AbstractPizza::new(
        ext(&[qi(3), qi(3), qi(4), q(3, 2)]),
        vec![qi(1), qi(3), q(3, 2)],
        vec![Width::Point, Width::Affine(AffineMap::new(q(1, 2), q(3, 2))), id()],
    )
    .expect("well-shaped")
}

/// Same shape as [`varpi`] but with `β₂ = 2` and `μ₂` through `(3,3)–(4,2)`.
/// Here `T₁` is tied to `T₂`, so the signs `(+, −)` are not allowable.
pub fn varpi_with_low_beta() -> AbstractPizza {
    AbstractPizza::new(
        ext(&[qi(3), qi(3), qi(4), q(3, 2)]),
        vec![qi(1), qi(2), q(3, 2)],
        vec![Width::Point, Width::Affine(AffineMap::new(qi(-1), qi(6))), id()],
    )
    .expect("well-shaped")
}

/// One coherent slice between two transverse ones; `D₁` is the only
/// maximum. `q = (2, 3, 2, 1)`, `β = (2, 2, 1)`, `μ₂(q) = q/2 + 1`.
/// Pairs with `σ = id`, `υ = id`, `s = (−)`.
pub fn varpi2() -> AbstractPizza {
    AbstractPizza::new(
        ext(&[qi(2), qi(3), qi(2), qi(1)]),
        vec![qi(2), qi(2), qi(1)],
        vec![id(), Width::Affine(AffineMap::new(q(1, 2), qi(1))), id()],
    )
    .expect("well-shaped")
}

/// Supporting profile for the permutation `(0,3,1,4,2,5)`:
/// consecutive tangency orders `(1, 2, 2, 2, 3/2)`, arc orders
/// `(2, 5/2, 3, 5/2, 3, 3/2)`.
pub fn pi_profile() -> (Vec<Q>, Vec<ExtRational>) {
    (
        vec![qi(1), qi(2), qi(2), qi(2), q(3, 2)],
        ext(&[qi(2), q(5, 2), qi(3), q(5, 2), qi(3), q(3, 2)]),
    )
}

pub const PI: [usize; 6] = [0, 3, 1, 4, 2, 5];

/// The exponent menu `{1, 3/2, 2, 5/2, 3}`.
pub fn menu() -> Vec<Q> {
    vec![qi(1), q(3, 2), qi(2), q(5, 2), qi(3)]
}

/// The menu above extended by `4`.
pub fn menu_wide() -> Vec<Q> {
    let mut m = menu();
    m.push(qi(4));
    m
}
