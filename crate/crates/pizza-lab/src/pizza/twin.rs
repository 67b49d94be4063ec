//! Essential arcs, pre-pizzas and twin pre-pizzas.

use serde::{Deserialize, Serialize};

use super::{AbstractPizza, PizzaError, SliceClass, Width};
use crate::exact::{AffineMap, ExtRational, Fin, Q};
use crate::table::TordTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Primary,
    TwinPair,
    TransverseSlice,
    GapPair,
}

/// One consecutive pair `(k−1, k)` of a twin pre-pizza.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub class: PairClass,
    /// Tangency order `β̂_k` of the two arcs.
    pub betahat: Q,
    /// Width data of a primary pair (its interval is given by the arc orders).
    pub mu: Option<Width>,
}

/// Where an arc of the twin pre-pizza comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArcTag {
    /// Pizza zone containing the arc.
    pub zone: usize,
    pub boundary: bool,
    /// `Some(i)` (1-based) when the zone is the maximum zone `M_i`.
    pub maximum: Option<usize>,
    /// Endpoint of a coherent slice.
    pub primary: bool,
    /// Inserted twin partner.
    pub twin: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPrePizza {
    /// Orders `q̌_k`, one per arc.
    pub q: Vec<ExtRational>,
    /// Pairs `(k−1, k)` for `k = 1..𝒩`, stored at index `k − 1`.
    pub pairs: Vec<Pair>,
    pub arcs: Vec<ArcTag>,
    /// Pizza slice carried by each primary pair.
    pub pair_slice: Vec<Option<usize>>,
}

impl TwinPrePizza {
    /// Arc count `𝒩`.
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn betahats(&self) -> Vec<Q> {
        self.pairs.iter().map(|p| p.betahat).collect()
    }

    pub fn pair(&self, k: usize) -> &Pair {
        &self.pairs[k - 1]
    }

    /// Index `k` of the primary pair `(k−1, k)` carrying slice `ℓ`.
    pub fn primary_pair_of_slice(&self, slice: usize) -> Option<usize> {
        self.pair_slice.iter().position(|&s| s == Some(slice)).map(|i| i + 1)
    }

    /// Arc index of the maximum zone `M_i` (1-based).
    pub fn arc_of_maximum(&self, i: usize) -> Option<usize> {
        self.arcs.iter().position(|a| a.maximum == Some(i))
    }

    pub fn tord_table(&self) -> TordTable {
        TordTable::from_consecutive(&self.betahats())
    }

    pub fn twin_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.twin).count()
    }
}

/// Builds the twin pre-pizza of a minimal pizza.
pub fn build_twin_pre_pizza(p: &AbstractPizza) -> Result<TwinPrePizza, PizzaError> {
    if let Some((index, kind)) = p.first_reduction() {
        return Err(PizzaError::NotMinimal { index, kind });
    }
    let n = p.p();
    let zc: Vec<_> = (0..=n).map(|z| p.zone_class(z).expect("in range")).collect();
    let coherent: Vec<bool> = (0..=n).map(|l| l > 0 && p.is_coherent(l)).collect();
    let maxima = p.maximum_zones();
    let max_index = |z: usize| maxima.iter().position(|&m| m == z).map(|i| i + 1);
    let primary_zone = |z: usize| (z >= 1 && coherent[z]) || (z < n && coherent[z + 1]);
    let essential: Vec<usize> = (0..=n)
        .filter(|&z| z == 0 || z == n || zc[z].is_maximum() || primary_zone(z))
        .collect();

    let mut tp = TwinPrePizza { q: Vec::new(), pairs: Vec::new(), arcs: Vec::new(), pair_slice: Vec::new() };
    let tag = |z: usize, twin: bool| ArcTag {
        zone: z,
        boundary: !twin && (z == 0 || z == n),
        maximum: if twin { None } else { max_index(z) },
        primary: primary_zone(z),
        twin,
    };
    let push_arc = |tp: &mut TwinPrePizza, z: usize, twin: bool| {
        tp.q.push(p.q(z));
        tp.arcs.push(tag(z, twin));
    };
    let push_pair = |tp: &mut TwinPrePizza, class, betahat, mu, slice| {
        tp.pairs.push(Pair { class, betahat, mu });
        tp.pair_slice.push(slice);
    };
    let twin_pair = |tp: &mut TwinPrePizza, z: usize| {
        let qz = p.q(z).expect_finite("order of a twin zone").expect("finite twin order");
        tp.pairs.push(Pair { class: PairClass::TwinPair, betahat: qz, mu: None });
        tp.pair_slice.push(None);
    };

    let boundary_twin = |z: usize, slice: usize| {
        zc[z].transverse && !zc[z].is_maximum() && coherent[slice]
    };

    push_arc(&mut tp, 0, false);
    if n >= 1 && boundary_twin(0, 1) {
        twin_pair(&mut tp, 0);
        push_arc(&mut tp, 0, true);
    }
    for w in essential.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b == a + 1 {
            let l = b;
            if coherent[l] {
                push_pair(&mut tp, PairClass::Primary, p.beta(l), Some(p.mu(l)), Some(l));
            } else {
                push_pair(&mut tp, PairClass::TransverseSlice, p.beta(l), None, None);
            }
        } else {
            let betahat = (a + 1..=b).map(|l| p.beta(l)).min().expect("nonempty gap");
            push_pair(&mut tp, PairClass::GapPair, betahat, None, None);
        }
        push_arc(&mut tp, b, false);
        let interior = b < n;
        if interior && coherent[b] && coherent[b + 1] && zc[b].transverse && !zc[b].is_maximum() {
            twin_pair(&mut tp, b);
            push_arc(&mut tp, b, true);
        }
    }
    if n >= 1 && boundary_twin(n, n) {
        // The partner sits just before γ₂: swap roles so γ₂ stays last.
        let last = tp.arcs.pop().expect("boundary arc");
        let qn = tp.q.pop().expect("boundary order");
        push_arc(&mut tp, n, true);
        twin_pair(&mut tp, n);
        tp.arcs.push(last);
        tp.q.push(qn);
    }
    Ok(tp)
}

/// The terms of the count `𝒩 = 2L − n₂ − m₂ + m₀ + δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountTerms {
    pub l: usize,
    pub n2: usize,
    pub m2: usize,
    pub m0: usize,
    pub delta: usize,
}

impl CountTerms {
    pub fn value(&self) -> usize {
        2 * self.l + self.m0 + self.delta - self.n2 - self.m2
    }
}

/// Counts the arcs of the twin pre-pizza directly from pizza data.
pub fn twin_count_formula(p: &AbstractPizza) -> CountTerms {
    let n = p.p();
    let coh = |l: usize| l >= 1 && l <= n && p.is_coherent(l);
    let zc = |z: usize| p.zone_class(z).expect("in range");
    let l = p.coherent_slices().len();
    let n2 = (1..n).filter(|&z| !zc(z).transverse).count();
    let m2 = (1..n)
        .filter(|&z| zc(z).is_maximum() && zc(z).transverse && coh(z) && coh(z + 1))
        .count();
    let m0 = (0..=n)
        .filter(|&z| zc(z).is_maximum() && zc(z).transverse && !coh(z) && !coh(z + 1))
        .count();
    let delta = [0, n]
        .into_iter()
        .filter(|&z| zc(z).transverse && !zc(z).is_maximum())
        .count();
    CountTerms { l, n2, m2, m0, delta }
}

/// Representative of a zone of a pizza rebuilt from twin pre-pizza data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZoneRep {
    /// An arc of the twin pre-pizza.
    Arc(usize),
    /// A generic arc splitting gap pair `(k−1, k)`.
    Generic(usize),
}

/// Rebuilds the pizza encoded by twin pre-pizza data: twins are merged,
/// each gap pair is split at a generic arc of order `β̂`, transverse pairs
/// get identity widths. Also returns a representative for every zone.
pub fn twin_to_pizza(q: &[ExtRational], pairs: &[Pair]) -> Result<(AbstractPizza, Vec<ZoneRep>), PizzaError> {
    let nn = q.len();
    if nn < 2 || pairs.len() != nn - 1 {
        return Err(PizzaError::Invalid("twin data needs ≥ 2 arcs and one pair per gap".into()));
    }
    let id = Width::Affine(AffineMap::identity());
    let mut zq = vec![q[0]];
    let mut reps = vec![ZoneRep::Arc(0)];
    let mut beta = Vec::new();
    let mut mu = Vec::new();
    for k in 1..nn {
        let pr = &pairs[k - 1];
        let (qa, qb) = (q[k - 1], q[k]);
        match pr.class {
            PairClass::TwinPair => {
                if qa != qb {
                    return Err(PizzaError::Invalid(format!("twin pair {k} joins different orders")));
                }
                if k == nn - 1 {
                    *reps.last_mut().expect("zone") = ZoneRep::Arc(k);
                }
                continue;
            }
            PairClass::Primary => {
                let w = pr.mu.ok_or_else(|| PizzaError::Invalid(format!("primary pair {k} has no width")))?;
                beta.push(pr.betahat);
                mu.push(w);
            }
            PairClass::TransverseSlice => {
                beta.push(pr.betahat);
                mu.push(if qa == qb { Width::Point } else { id });
            }
            PairClass::GapPair => {
                zq.push(Fin(pr.betahat));
                reps.push(ZoneRep::Generic(k));
                beta.extend([pr.betahat, pr.betahat]);
                mu.extend([id, id]);
            }
        }
        zq.push(qb);
        reps.push(ZoneRep::Arc(k));
    }
    if beta.is_empty() {
        // Only twins: the whole triangle is one point slice with `β = q`.
        let b = q[0].finite().ok_or_else(|| PizzaError::Invalid("twin data of infinite order".into()))?;
        zq = vec![q[0], q[0]];
        reps = vec![ZoneRep::Arc(0), ZoneRep::Arc(nn - 1)];
        beta.push(b);
        mu.push(Width::Point);
    }
    let pizza = AbstractPizza::new(zq, beta, mu)?;
    if let Some(v) = pizza.validate().first() {
        return Err(PizzaError::Invalid(v.to_string()));
    }
    Ok((pizza, reps))
}

impl PairClass {
    /// Shape of a secondary pair from its numbers alone.
    pub fn classify_secondary(qa: ExtRational, qb: ExtRational, betahat: Q) -> Option<PairClass> {
        let m = qa.min(qb);
        if Fin(betahat) > m {
            None
        } else if Fin(betahat) < m {
            Some(PairClass::GapPair)
        } else if qa == qb {
            Some(PairClass::TwinPair)
        } else {
            Some(PairClass::TransverseSlice)
        }
    }
}

impl SliceClass {
    pub fn is_coherent(&self) -> bool {
        *self == SliceClass::Coherent
    }
}
