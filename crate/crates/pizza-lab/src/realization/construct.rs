//! Building normal pairs from a pizza and admissible combinatorics.

use super::embedding::{make_arc, ArcRole, NamedArc, PairEmbedding, PrimaryPiece};
use super::function::cumulative_arcs;
use super::slice::{graded_power, SliceFormula};
use super::RealizationError;
use crate::blocks::Permutation;
use crate::exact::{Fin, MonomialSeries};
use crate::invariant::{check_admissible, InvariantBundle, Triple};
use crate::pizza::{build_twin_pre_pizza, twin_to_pizza, AbstractPizza, Pair, PairClass, TwinPrePizza};

/// `σ` of a totally transverse pizza read off an extended permutation `π`.
pub fn sigma_from_extended(tp: &TwinPrePizza, pi: &Permutation) -> Result<Permutation, RealizationError> {
    let max_arcs: Vec<usize> = tp.arcs.iter().enumerate().filter(|(_, a)| a.maximum.is_some()).map(|(i, _)| i).collect();
    let mut images: Vec<usize> = max_arcs.iter().map(|&a| pi.apply(a)).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    for x in &mut images {
        *x = sorted.binary_search(x).expect("present");
    }
    Ok(Permutation::new(images)?)
}

/// Realizes a totally transverse minimal pizza with extended permutation `π`
/// on its supporting family.
pub fn realize_transverse(p: &AbstractPizza, pi: &Permutation) -> Result<(PairEmbedding, InvariantBundle), RealizationError> {
    if !p.is_totally_transverse() {
        return Err(RealizationError::Admissibility("pizza has coherent slices".into()));
    }
    let tp = build_twin_pre_pizza(p)?;
    let n = tp.len();
    if pi.len() != n {
        return Err(RealizationError::Admissibility(format!("π acts on {} points but the supporting family has {n}", pi.len())));
    }
    if pi.apply(0) != 0 || pi.apply(n - 1) != n - 1 {
        return Err(RealizationError::Admissibility("π must fix both boundary arcs".into()));
    }
    let sigma = sigma_from_extended(&tp, pi)?;
    let triple = Triple::new(sigma, Permutation::identity(0), Vec::new())?;
    let (e, b) = realize_general(p, &triple)?;
    if &b.varpi != pi {
        return Err(RealizationError::Admissibility(format!(
            "π = {pi} is not the arc permutation {} determined by its σ",
            b.varpi
        )));
    }
    Ok((e, b))
}

/// Realizes `(P, σ, υ, s)`; returns the embedding and the bundle it is
/// built to carry.
pub fn realize_general(p: &AbstractPizza, t: &Triple) -> Result<(PairEmbedding, InvariantBundle), RealizationError> {
    let report = check_admissible(p, t)?;
    let Some(varpi) = report.varpi.clone().filter(|_| report.passes()) else {
        return Err(RealizationError::Admissibility(report.failure().unwrap_or_else(|| "not admissible".into())));
    };
    let tp = build_twin_pre_pizza(p)?;
    let (embedding, lambda_prime) = build(&tp, &varpi)?;
    let bundle = InvariantBundle::new(p.clone(), lambda_prime, t.clone())?;
    if bundle.varpi != varpi {
        return Err(RealizationError::Embedding("bundle recomputed a different ϖ".into()));
    }
    let embedding = PairEmbedding { requested: Some(bundle.clone()), ..embedding };
    Ok((embedding, bundle))
}

/// Steps 1–3 of the construction for a twin pre-pizza and its `ϖ`; also
/// returns the pizza the `T′` side is designed to carry.
fn build(tp: &TwinPrePizza, varpi: &Permutation) -> Result<(PairEmbedding, AbstractPizza), RealizationError> {
    let n = tp.len();
    let dim = n + 2;
    let v = cumulative_arcs(&tp.betahats());
    let z: Vec<MonomialSeries> = tp.q.iter().map(|&q| graded_power(q)).collect();
    let inv = varpi.inverse();

    let arcs_t = (0..n).map(|k| NamedArc::new(ArcRole::Lambda(k), make_arc(dim, &v[k], &MonomialSeries::zero(), None))).collect();
    let lambda_prime = |kp: usize, w: Option<(usize, &MonomialSeries)>| {
        let k = inv.apply(kp);
        make_arc(dim, &v[k], &z[k], w)
    };

    let mut arcs_t_prime = vec![NamedArc::new(ArcRole::LambdaPrime(0), lambda_prime(0, None))];
    let mut pair_classes = Vec::with_capacity(n - 1);
    let mut primary = Vec::new();
    let mut pairs_prime = Vec::with_capacity(n - 1);
    for kp in 1..n {
        let (a, b) = (inv.apply(kp - 1), inv.apply(kp));
        let (lo, hi) = (a.min(b), a.max(b));
        let pr = tp.pair(hi);
        if hi == lo + 1 && pr.class == PairClass::Primary {
            let width = pr.mu.expect("primary pairs carry widths");
            let formula = SliceFormula::new(pr.betahat, tp.q[lo], tp.q[hi], width, true)?;
            primary.push(PrimaryPiece { t_pair: hi, t_prime_pair: kp, formula });
            pair_classes.push(PairClass::Primary);
            pairs_prime.push(Pair { class: PairClass::Primary, betahat: pr.betahat, mu: Some(width) });
        } else {
            let beta = tp.pairs[lo..hi].iter().map(|p| p.betahat).min().expect("lo < hi");
            let class = PairClass::classify_secondary(tp.q[a], tp.q[b], beta).ok_or_else(|| {
                RealizationError::Embedding(format!("T′ pair {kp} has β′ = {beta} above its orders"))
            })?;
            let w = graded_power(Fin(beta));
            arcs_t_prime.push(NamedArc::new(ArcRole::ThetaPlus(kp - 1), lambda_prime(kp - 1, Some((kp, &w)))));
            arcs_t_prime.push(NamedArc::new(ArcRole::ThetaMinus(kp), lambda_prime(kp, Some((kp, &w)))));
            pair_classes.push(class);
            pairs_prime.push(Pair { class, betahat: beta, mu: None });
        }
        arcs_t_prime.push(NamedArc::new(ArcRole::LambdaPrime(kp), lambda_prime(kp, None)));
    }
    let q_prime: Vec<_> = (0..n).map(|kp| tp.q[inv.apply(kp)]).collect();
    let (lp, _) = twin_to_pizza(&q_prime, &pairs_prime)?;
    if let Some((index, kind)) = lp.first_reduction() {
        return Err(RealizationError::Embedding(format!("T′ pizza is reducible by ({kind}) at {index}")));
    }
    let e = PairEmbedding { dim, arcs_t, arcs_t_prime, pair_classes, primary, requested: None };
    e.validate()?;
    Ok((e, lp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{arc_tord, q, qi, ExtRational, Inf};
    use crate::fixtures;
    use crate::invariant::Sign;
    use crate::pizza::from_transverse_profile;

    fn tord(a: &NamedArc, b: &NamedArc) -> ExtRational {
        arc_tord(&a.coords, &b.coords).unwrap()
    }

    #[test]
    fn varpi_fixture_embedding() {
        let p = fixtures::varpi();
        let t = Triple::identity(2, vec![Sign::Plus, Sign::Minus]);
        let (e, b) = realize_general(&p, &t).unwrap();
        assert_eq!(b.varpi.images(), &[0, 1, 3, 2, 4]);
        assert_eq!(e.dim, 7);
        assert_eq!(b.lambda_prime.p(), 4);
        let tp = build_twin_pre_pizza(&p).unwrap();
        let table = tp.tord_table();
        let lp = e.lambda_prime_positions();
        for i in 0..5 {
            let img = &e.arcs_t_prime[lp[b.varpi.apply(i)]];
            assert_eq!(tord(&e.arcs_t[i], img), tp.q[i]);
            for j in 0..5 {
                let want = if i == j { Inf } else { table.get(i, j) };
                assert_eq!(tord(&e.arcs_t[i], &e.arcs_t[j]), want);
                assert_eq!(tord(img, &e.arcs_t_prime[lp[b.varpi.apply(j)]]), want);
            }
        }
    }

    #[test]
    fn transverse_profile_embedding() {
        let (beta, qs) = fixtures::pi_profile();
        let p = from_transverse_profile(&beta, &qs).unwrap();
        let pi = Permutation::new(fixtures::PI.to_vec()).unwrap();
        let (e, b) = realize_transverse(&p, &pi).unwrap();
        assert_eq!(b.sigma().one_based(), vec![1, 4, 2, 5, 3]);
        assert_eq!(e.dim, 8);
        assert!(e.primary.is_empty());
        let not_fixed = Permutation::new(vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert!(matches!(realize_transverse(&p, &not_fixed), Err(RealizationError::Admissibility(_))));
        // A block inequality fails for this profile and swap.
        let qs = [q(5, 2), q(5, 2), qi(2), qi(1)].map(Fin).to_vec();
        let p = from_transverse_profile(&[qi(2), qi(1), qi(1)], &qs).unwrap();
        let swap = Permutation::new(vec![0, 2, 1, 3]).unwrap();
        let err = realize_transverse(&p, &swap).unwrap_err().to_string();
        assert!(err.contains("block inequality"), "{err}");
    }

    #[test]
    fn inadmissible_triples_are_rejected() {
        let p = fixtures::varpi();
        let t = Triple::identity(2, vec![Sign::Minus, Sign::Minus]);
        assert!(matches!(realize_general(&p, &t), Err(RealizationError::Admissibility(_))));
    }
}
