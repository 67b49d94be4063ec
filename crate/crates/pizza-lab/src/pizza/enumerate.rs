//! Enumeration and sampling of valid abstract pizzas over a finite menu of
//! exponents. Affine widths are parametrized by their endpoint values, both
//! drawn from the menu.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{AbstractPizza, Width};
use crate::exact::{affine_interpolate, ExtRational, Fin, Q};

/// Every `(β, μ)` making a valid slice over the ordered interval `(q0, q1)`.
pub fn slice_options(q0: Q, q1: Q, menu: &[Q]) -> Vec<(Q, Width)> {
    let mut out = Vec::new();
    if q0 == q1 {
        out.extend(menu.iter().filter(|&&b| b <= q0).map(|&b| (b, Width::Point)));
        return out;
    }
    // The minimum of μ sits at one endpoint, the maximum κ > β at the other.
    for (qmin, qmax) in [(q0, q1), (q1, q0)] {
        for &beta in menu.iter().filter(|&&b| b <= qmin) {
            for &kappa in menu.iter().filter(|&&k| k > beta && k <= qmax) {
                let m = affine_interpolate(Fin(qmin), Fin(beta), Fin(qmax), Fin(kappa))
                    .expect("distinct abscissae");
                out.push((beta, Width::Affine(m)));
            }
        }
    }
    out
}

/// All order sequences `q_0, …, q_p` over the menu.
pub fn order_sequences(menu: &[Q], p: usize) -> Vec<Vec<Q>> {
    let mut seqs: Vec<Vec<Q>> = vec![Vec::new()];
    for _ in 0..=p {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                menu.iter().map(move |&x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    seqs
}

/// Calls `f` on every valid pizza with the given orders.
pub fn for_each_pizza_with_orders(q: &[Q], menu: &[Q], mut f: impl FnMut(AbstractPizza)) {
    let options: Vec<Vec<(Q, Width)>> =
        q.windows(2).map(|w| slice_options(w[0], w[1], menu)).collect();
    if options.iter().any(Vec::is_empty) {
        return;
    }
    let qs: Vec<ExtRational> = q.iter().map(|&x| Fin(x)).collect();
    let mut idx = vec![0usize; options.len()];
    loop {
        let (beta, mu): (Vec<Q>, Vec<Width>) =
            idx.iter().zip(&options).map(|(&i, o)| o[i]).unzip();
        f(AbstractPizza::new(qs.clone(), beta, mu).expect("well-shaped"));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Every valid pizza with `p` slices over the menu (beware: grows fast).
pub fn enumerate_pizzas(menu: &[Q], p: usize) -> Vec<AbstractPizza> {
    let mut out = Vec::new();
    for q in order_sequences(menu, p) {
        for_each_pizza_with_orders(&q, menu, |x| out.push(x));
    }
    out
}

/// A uniformly drawn order sequence with uniformly drawn slice data.
pub fn random_pizza<R: Rng + ?Sized>(rng: &mut R, menu: &[Q], p: usize) -> AbstractPizza {
    loop {
        let q: Vec<Q> = (0..=p).map(|_| *menu.choose(rng).expect("nonempty menu")).collect();
        let picks: Option<Vec<(Q, Width)>> = q
            .windows(2)
            .map(|w| slice_options(w[0], w[1], menu).choose(rng).copied())
            .collect();
        if let Some(picks) = picks {
            let (beta, mu) = picks.into_iter().unzip();
            let qs = q.into_iter().map(Fin).collect();
            return AbstractPizza::new(qs, beta, mu).expect("well-shaped");
        }
    }
}
