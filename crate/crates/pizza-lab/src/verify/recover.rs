//! Rebuilding `Λ`, `Λ′`, the cross table and the invariant from an embedding,
//! using only the oracle table and width probes along test arcs.

use serde::Serialize;

use super::VerifyError;
use crate::exact::{affine_interpolate, arc_tord, ExtRational, Fin, Inf, MonoArc, MonomialSeries, Q};
use crate::invariant::{recover_triple_with, InvariantBundle, NormalPairModel, Sign, Tau};
use crate::pizza::{twin_to_pizza, Pair, PairClass, Width, ZoneRep};
use crate::realization::{test_arc, PairEmbedding, PrimaryPiece};
use crate::table::TordTable;

/// Twin pre-pizza data read off one side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideData {
    pub q: Vec<ExtRational>,
    #[serde(serialize_with = "ser_qs")]
    pub betahat: Vec<Q>,
    pub classes: Vec<PairClass>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::exact::format_q))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recovery {
    pub t: SideData,
    pub t_prime: SideData,
    pub model: NormalPairModel,
    pub bundle: InvariantBundle,
}

fn fail(invariant: &'static str, detail: impl Into<String>) -> VerifyError {
    VerifyError::Recovery { invariant, detail: detail.into() }
}

/// Indices into the full table: `T` arcs, `λ̌′` arcs, `T′` arcs in order.
pub(crate) struct Index {
    pub t: Vec<usize>,
    pub lambda_prime: Vec<usize>,
    pub t_prime: Vec<usize>,
}

pub(crate) fn index(e: &PairEmbedding) -> Index {
    let n = e.n();
    Index {
        t: (0..n).collect(),
        lambda_prime: e.lambda_prime_positions().into_iter().map(|i| n + i).collect(),
        t_prime: (n..n + e.arcs_t_prime.len()).collect(),
    }
}

fn combine(a: &MonoArc, b: &MonoArc, f: impl Fn(&MonomialSeries, &MonomialSeries) -> MonomialSeries) -> MonoArc {
    let coords = a.coords().iter().zip(b.coords()).map(|(x, y)| f(x, y)).collect();
    MonoArc::from_coords(coords).expect("combination of compatible arcs")
}

fn midpoint(a: &MonoArc, b: &MonoArc) -> MonoArc {
    let half = Q::new(1, 2);
    combine(a, b, |x, y| x.add(y).scale(half))
}

/// Fits an affine width from probes `(d, from_right) ↦ (order, width)`.
/// A probe is informative when its order differs from both end orders;
/// those lie strictly inside the slice's order interval and give exact
/// points of the graph of `μ`.
fn fit_width(
    ends: (ExtRational, ExtRational),
    beta: Q,
    mut probe: impl FnMut(Q, bool) -> Result<Option<(ExtRational, ExtRational)>, VerifyError>,
) -> Result<Width, VerifyError> {
    if ends.0 == ends.1 {
        return Ok(Width::Point);
    }
    for from_right in [false, true] {
        let mut pts: Vec<(Q, Q)> = Vec::new();
        let mut d = Q::from_integer(1);
        for _ in 0..16 {
            if let Some((Fin(q), Fin(w))) = probe(d, from_right)? {
                if Fin(q) != ends.0 && Fin(q) != ends.1 && !pts.iter().any(|p| p.0 == q) {
                    pts.push((q, w));
                }
            }
            if pts.len() == 3 {
                break;
            }
            d /= 2;
        }
        if pts.len() < 2 {
            continue;
        }
        let m = affine_interpolate(Fin(pts[0].0), Fin(pts[0].1), Fin(pts[1].0), Fin(pts[1].1))?;
        if let Some(&(q, w)) = pts.get(2) {
            if m.eval_fin(q) != w {
                return Err(fail("width", format!("probes are not collinear: μ({q}) = {w} vs {}", m.eval_fin(q))));
            }
        }
        let lo = m.eval(ends.0).unwrap_or(Inf).min(m.eval(ends.1).unwrap_or(Inf));
        if lo != Fin(beta) {
            return Err(fail("width", format!("fitted width has minimum {lo}, expected β = {beta}")));
        }
        return Ok(Width::Affine(m));
    }
    Err(fail("width", "no informative test arcs"))
}

struct Ctx<'a> {
    e: &'a PairEmbedding,
    ix: Index,
}

impl Ctx<'_> {
    fn t_arc(&self, k: usize) -> &MonoArc {
        &self.e.arcs_t[k].coords
    }

    fn lp_arc(&self, kp: usize) -> &MonoArc {
        &self.e.arcs_t_prime[self.ix.lambda_prime[kp] - self.e.n()].coords
    }

    fn t_test(&self, k: usize, d: Q, from_right: bool) -> MonoArc {
        combine(self.t_arc(k - 1), self.t_arc(k), |x, y| test_arc(x, y, d, from_right))
    }

    /// Order of `dist(·, T′)` along a test arc of `T`: the best contact with
    /// a `T′` arc or with the graph piece over the same slice.
    fn q_to_t_prime(&self, arc: &MonoArc, piece: Option<&PrimaryPiece>) -> Result<ExtRational, VerifyError> {
        let mut best = self.e.arcs_t_prime.iter().map(|a| arc_tord(arc, &a.coords)).try_fold(Fin(Q::from_integer(0)), |m, x| x.map(|x| m.max(x)))?;
        if let Some(pc) = piece {
            let (l, r) = (self.t_arc(pc.t_pair - 1).coord(1), self.t_arc(pc.t_pair).coord(1));
            best = best.max(pc.formula.order_along(arc.coord(1), l, r));
        }
        Ok(best)
    }

    fn t_probe(&self, k: usize, d: Q, from_right: bool) -> Result<Option<(ExtRational, ExtRational)>, VerifyError> {
        let arc = self.t_test(k, d, from_right);
        let w = arc_tord(&arc, self.t_arc(k - 1))?.max(arc_tord(&arc, self.t_arc(k))?);
        Ok(Some((self.q_to_t_prime(&arc, self.e.piece_on_t(k))?, w)))
    }

    /// Probe on the graph `G = (u, v, F(u, v))` of a piece over a `T` test
    /// arc: its order to `T` is `ord F`; its width in `T′` is its contact
    /// with the nearer `T′` boundary arc of the piece.
    fn t_prime_probe(&self, pc: &PrimaryPiece, d: Q, from_right: bool) -> Option<(ExtRational, ExtRational)> {
        let (l, r) = (self.t_arc(pc.t_pair - 1).coord(1), self.t_arc(pc.t_pair).coord(1));
        let v = test_arc(l, r, d, from_right);
        let ord_f = pc.formula.order_along(&v, l, r);
        let mut width = Fin(Q::from_integer(0));
        for kp in [pc.t_prime_pair - 1, pc.t_prime_pair] {
            let b = self.lp_arc(kp);
            let zb = b.coord(2).order();
            if zb == ord_f && zb != Inf {
                return None;
            }
            let contact = v.order_of_difference(b.coord(1)).min(ord_f.min(zb));
            let rest = b.coords()[3..].iter().map(|s| s.order()).min().unwrap_or(Inf);
            width = width.max(contact.min(rest));
        }
        Some((ord_f, width))
    }
}

pub fn recover(e: &PairEmbedding, table: &TordTable) -> Result<Recovery, VerifyError> {
    e.validate()?;
    let n = e.n();
    let ix = index(e);
    if ix.lambda_prime.len() != n {
        return Err(fail("arc_count", format!("{} λ′ arcs for {n} T arcs", ix.lambda_prime.len())));
    }
    if table.len() != n + e.arcs_t_prime.len() {
        return Err(fail("table", "table does not cover the embedding"));
    }
    let ctx = Ctx { e, ix };
    let ix = &ctx.ix;

    let q: Vec<ExtRational> = ix.t.iter().map(|&i| ix.t_prime.iter().map(|&j| table.get(i, j)).max().expect("T′ arcs")).collect();
    let qp: Vec<ExtRational> =
        ix.lambda_prime.iter().map(|&j| ix.t.iter().map(|&i| table.get(i, j)).max().expect("T arcs")).collect();
    let finite = |v: ExtRational, what: String| v.finite().ok_or_else(|| fail("distinct_arcs", format!("{what} coincide")));
    let bh: Vec<Q> = (1..n).map(|k| finite(table.get(ix.t[k - 1], ix.t[k]), format!("T arcs {} and {k}", k - 1))).collect::<Result<_, _>>()?;
    let bhp: Vec<Q> = (1..n)
        .map(|k| finite(table.get(ix.lambda_prime[k - 1], ix.lambda_prime[k]), format!("λ′ arcs {} and {k}", k - 1)))
        .collect::<Result<_, _>>()?;

    let mut pairs = Vec::with_capacity(n - 1);
    for k in 1..n {
        let pr = if ctx.e.piece_on_t(k).is_some() {
            let w = fit_width((q[k - 1], q[k]), bh[k - 1], |d, r| ctx.t_probe(k, d, r))?;
            Pair { class: PairClass::Primary, betahat: bh[k - 1], mu: Some(w) }
        } else {
            let class = PairClass::classify_secondary(q[k - 1], q[k], bh[k - 1])
                .ok_or_else(|| fail("pair_class", format!("T pair {k}: β̂ = {} above its orders", bh[k - 1])))?;
            Pair { class, betahat: bh[k - 1], mu: None }
        };
        pairs.push(pr);
    }
    let mut pairs_p = Vec::with_capacity(n - 1);
    for kp in 1..n {
        let pr = if let Some(pc) = ctx.e.piece_on_t_prime(kp) {
            let w = fit_width((qp[kp - 1], qp[kp]), bhp[kp - 1], |d, r| Ok(ctx.t_prime_probe(pc, d, r)))?;
            Pair { class: PairClass::Primary, betahat: bhp[kp - 1], mu: Some(w) }
        } else {
            let class = PairClass::classify_secondary(qp[kp - 1], qp[kp], bhp[kp - 1])
                .ok_or_else(|| fail("pair_class", format!("T′ pair {kp}: β̂′ = {} above its orders", bhp[kp - 1])))?;
            Pair { class, betahat: bhp[kp - 1], mu: None }
        };
        pairs_p.push(pr);
    }

    let (lambda, reps) = twin_to_pizza(&q, &pairs).map_err(|x| fail("pizza", format!("T side: {x}")))?;
    let (lambda_p, reps_p) = twin_to_pizza(&qp, &pairs_p).map_err(|x| fail("pizza", format!("T′ side: {x}")))?;
    for (name, p) in [("Λ", &lambda), ("Λ′", &lambda_p)] {
        if let Some((index, kind)) = p.first_reduction() {
            return Err(fail("minimality", format!("recovered {name} reducible by ({kind}) at {index}")));
        }
    }

    let rep_t: Vec<MonoArc> = reps
        .iter()
        .map(|r| match *r {
            ZoneRep::Arc(k) => ctx.t_arc(k).clone(),
            ZoneRep::Generic(k) => midpoint(ctx.t_arc(k - 1), ctx.t_arc(k)),
        })
        .collect();
    let rep_tp: Vec<MonoArc> = reps_p
        .iter()
        .map(|r| match *r {
            ZoneRep::Arc(kp) => Ok(ctx.lp_arc(kp).clone()),
            ZoneRep::Generic(kp) => {
                let (a, b) = e.theta_positions(kp).ok_or_else(|| fail("generic_arc", format!("gap pair {kp} has no θ arcs")))?;
                Ok(midpoint(&e.arcs_t_prime[a].coords, &e.arcs_t_prime[b].coords))
            }
        })
        .collect::<Result<_, VerifyError>>()?;
    let cross = rep_t
        .iter()
        .map(|a| rep_tp.iter().map(|b| arc_tord(a, b)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;

    let model = NormalPairModel::new(lambda.clone(), lambda_p.clone(), cross)?;
    if let Some(v) = model.validate().into_iter().next() {
        return Err(fail("model", v));
    }
    let keep = |tau: &Tau| tau_matches_pieces(&ctx, &model, [(&reps, &pairs), (&reps_p, &pairs_p)], tau);
    let triple = recover_triple_with(&model, keep).map_err(|x| fail("triple", x.to_string()))?;
    let bundle = InvariantBundle::new(lambda, lambda_p, triple).map_err(|x| fail("bundle", x.to_string()))?;
    let side = |q: Vec<ExtRational>, betahat: Vec<Q>, pairs: &[Pair]| SideData {
        q,
        betahat,
        classes: pairs.iter().map(|p| p.class).collect(),
    };
    Ok(Recovery { t: side(q, bh, &pairs), t_prime: side(qp, bhp, &pairs_p), model, bundle })
}


/// The non-twin pair between the two arc representatives of a slice.
fn pair_of(reps: &[ZoneRep], pairs: &[Pair], slice: usize) -> Option<usize> {
    match (reps[slice - 1], reps[slice]) {
        (ZoneRep::Arc(a), ZoneRep::Arc(b)) => {
            let mut inner = (a + 1..=b).filter(|&k| pairs[k - 1].class != PairClass::TwinPair);
            let k = inner.next()?;
            inner.next().is_none().then_some(k)
        }
        _ => None,
    }
}

/// Whether a choice of `τ` agrees with the graph pieces of the embedding: the
/// piece over the `T` pair of `T_ℓ` must be the `T′` pair of `T′_τ(ℓ)`, and
/// the sign is `+` when the piece's first boundary arc lies over `λ̌_{k−1}`.
fn tau_matches_pieces(ctx: &Ctx<'_>, m: &NormalPairModel, sides: [(&[ZoneRep], &[Pair]); 2], tau: &Tau) -> bool {
    let [(reps, pairs), (reps_p, pairs_p)] = sides;
    let coh = m.lambda.coherent_slices();
    coh.iter().zip(&tau.slice_image).zip(&tau.sign).all(|((&l, &lp), &sign)| {
        let (Some(k), Some(kp)) = (pair_of(reps, pairs, l), pair_of(reps_p, pairs_p, lp)) else { return true };
        let Some(pc) = ctx.e.piece_on_t(k) else { return true };
        if pc.t_prime_pair != kp {
            return false;
        }
        let over_left = ctx.lp_arc(kp - 1).coord(1) == ctx.t_arc(k - 1).coord(1);
        over_left == (sign == Sign::Plus)
    })
}
