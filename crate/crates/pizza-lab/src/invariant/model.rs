//! Normal-pair models: two pizzas and the tangency orders between
//! representatives of their zones.

use serde::{Deserialize, Serialize};

use super::varpi::check_admissible;
use super::{InvariantError, Sign, Triple};
use crate::blocks::Permutation;
use crate::exact::{ExtRational, Inf};
use crate::pizza::AbstractPizza;
use crate::table::TordTable;

/// `cross[ℓ][ℓ′]` is the tangency order of representatives of `D_ℓ` and `D′_ℓ′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelJson", into = "ModelJson")]
pub struct NormalPairModel {
    pub lambda: AbstractPizza,
    pub lambda_prime: AbstractPizza,
    pub cross: Vec<Vec<ExtRational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub lambda: AbstractPizza,
    pub lambda_prime: AbstractPizza,
    pub cross: Vec<Vec<ExtRational>>,
}

impl TryFrom<ModelJson> for NormalPairModel {
    type Error = InvariantError;
    fn try_from(j: ModelJson) -> Result<Self, InvariantError> {
        NormalPairModel::new(j.lambda, j.lambda_prime, j.cross)
    }
}

impl From<NormalPairModel> for ModelJson {
    fn from(m: NormalPairModel) -> Self {
        ModelJson { lambda: m.lambda, lambda_prime: m.lambda_prime, cross: m.cross }
    }
}

fn zone_tord(p: &AbstractPizza, a: usize, b: usize) -> ExtRational {
    if a == b {
        Inf
    } else {
        p.internal_tord(a, b)
    }
}

impl NormalPairModel {
    /// Checks only the table shape; see [`NormalPairModel::validate`].
    pub fn new(
        lambda: AbstractPizza,
        lambda_prime: AbstractPizza,
        cross: Vec<Vec<ExtRational>>,
    ) -> Result<Self, InvariantError> {
        let (r, c) = (lambda.p() + 1, lambda_prime.p() + 1);
        if cross.len() != r || cross.iter().any(|row| row.len() != c) {
            return Err(InvariantError::InvalidModel(format!("cross table must be {r}×{c}")));
        }
        Ok(NormalPairModel { lambda, lambda_prime, cross })
    }

    pub fn cross(&self, l: usize, lp: usize) -> ExtRational {
        self.cross[l][lp]
    }

    /// The table on all zone representatives, `Λ` first then `Λ′`.
    pub fn joint_table(&self) -> TordTable {
        let (r, c) = (self.lambda.p() + 1, self.lambda_prime.p() + 1);
        let mut t = TordTable::new(r + c);
        for a in 0..r {
            for b in a + 1..r {
                t.set(a, b, zone_tord(&self.lambda, a, b));
            }
            for b in 0..c {
                t.set(a, r + b, self.cross[a][b]);
            }
        }
        for a in 0..c {
            for b in a + 1..c {
                t.set(r + a, r + b, zone_tord(&self.lambda_prime, a, b));
            }
        }
        t
    }

    /// All model axioms that fail, as messages.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (p, pp) = (self.lambda.p(), self.lambda_prime.p());
        let (l, lp) = (&self.lambda, &self.lambda_prime);
        for (name, v) in [("Λ", l.validate()), ("Λ′", lp.validate())] {
            out.extend(v.iter().map(|x| format!("{name}: {x}")));
        }
        if !(self.cross[0][0] == l.q(0) && l.q(0) == lp.q(0)) {
            out.push(format!("boundary pair γ₁: cross {} with orders {} / {}", self.cross[0][0], l.q(0), lp.q(0)));
        }
        if !(self.cross[p][pp] == l.q(p) && l.q(p) == lp.q(pp)) {
            out.push(format!("boundary pair γ₂: cross {} with orders {} / {}", self.cross[p][pp], l.q(p), lp.q(pp)));
        }
        for a in 0..=p {
            let m = self.cross[a].iter().copied().max().expect("nonempty row");
            if m != l.q(a) {
                out.push(format!("order of D_{a} is {} but its largest cross tord is {m}", l.q(a)));
            }
        }
        for b in 0..=pp {
            let m = (0..=p).map(|a| self.cross[a][b]).max().expect("nonempty column");
            if m != lp.q(b) {
                out.push(format!("order of D′_{b} is {} but its largest cross tord is {m}", lp.q(b)));
            }
        }
        let t = self.joint_table();
        if let Some((i, j, k)) = t.ultrametric_violations().first() {
            out.push(format!("cross table is not ultrametric on representatives {i}, {j}, {k}"));
        }
        out
    }

    fn require_valid(&self) -> Result<(), InvariantError> {
        match self.validate().into_iter().next() {
            Some(e) => Err(InvariantError::InvalidModel(e)),
            None => Ok(()),
        }
    }
}

/// `σ` read off a model.
pub fn compute_sigma(m: &NormalPairModel) -> Result<Permutation, InvariantError> {
    m.require_valid()?;
    let (l, lp) = (&m.lambda, &m.lambda_prime);
    let (mx, mxp) = (l.maximum_zones(), lp.maximum_zones());
    if mx.len() != mxp.len() {
        return Err(InvariantError::InvalidModel(format!(
            "Λ has {} maximum zones but Λ′ has {}",
            mx.len(),
            mxp.len()
        )));
    }
    let mut images = Vec::with_capacity(mx.len());
    for (i, &z) in mx.iter().enumerate() {
        let hits: Vec<usize> = mxp
            .iter()
            .enumerate()
            .filter(|&(_, &zp)| {
                m.cross(z, zp) == l.q(z) && l.q(z) == lp.q(zp) && l.zone_width(z) == lp.zone_width(zp)
            })
            .map(|(j, _)| j)
            .collect();
        match hits.as_slice() {
            [j] => images.push(*j),
            [] => return Err(InvariantError::InvalidModel(format!("maximum zone M_{} has no partner", i + 1))),
            _ => return Err(InvariantError::InvalidModel(format!("maximum zone M_{} has several partners", i + 1))),
        }
    }
    Permutation::new(images).map_err(|_| InvariantError::InvalidModel("two maximum zones share a partner".into()))
}

/// `τ` on coherent slices: `slice_image[k−1]` is `τ(ℓ)` for the `k`-th
/// coherent slice `T_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    pub slice_image: Vec<usize>,
    pub upsilon: Permutation,
    pub sign: Vec<Sign>,
}

/// Candidate partners `(k′, T′-slice, sign)` of each coherent slice of `Λ`.
fn tau_candidates(m: &NormalPairModel) -> Result<Vec<Vec<(usize, usize, Sign)>>, InvariantError> {
    m.require_valid()?;
    let (l, lp) = (&m.lambda, &m.lambda_prime);
    let (coh, cohp) = (l.coherent_slices(), lp.coherent_slices());
    if coh.len() != cohp.len() {
        return Err(InvariantError::InvalidModel(format!(
            "Λ has {} coherent slices but Λ′ has {}",
            coh.len(),
            cohp.len()
        )));
    }
    let normal = |x: usize, y: usize| m.cross(x, y) == l.q(x) && l.q(x) == lp.q(y);
    let mut out = Vec::with_capacity(coh.len());
    for (k, &s) in coh.iter().enumerate() {
        let (a, b) = (s - 1, s);
        let mut hits = Vec::new();
        for (kp, &sp) in cohp.iter().enumerate() {
            let (ap, bp) = (sp - 1, sp);
            if l.mu(s) != lp.mu(sp) || l.beta(s) != lp.beta(sp) {
                continue;
            }
            if normal(b, bp) && normal(a, ap) {
                hits.push((kp, sp, Sign::Plus));
            }
            if normal(b, ap) && normal(a, bp) {
                hits.push((kp, sp, Sign::Minus));
            }
        }
        if hits.is_empty() {
            return Err(InvariantError::InvalidModel(format!(
                "coherent slice T_{s} (ordinal {}) has no partner",
                k + 1
            )));
        }
        out.push(hits);
    }
    Ok(out)
}

/// Every bijective choice of partners consistent with the model.
pub fn tau_assignments(m: &NormalPairModel) -> Result<Vec<Tau>, InvariantError> {
    let cands = tau_candidates(m)?;
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(cands.len());
    fn go(cands: &[Vec<(usize, usize, Sign)>], pick: &mut Vec<(usize, usize, Sign)>, out: &mut Vec<Tau>) {
        let k = pick.len();
        if k == cands.len() {
            let upsilon = Permutation::new(pick.iter().map(|x| x.0).collect()).expect("distinct partners");
            out.push(Tau {
                slice_image: pick.iter().map(|x| x.1).collect(),
                upsilon,
                sign: pick.iter().map(|x| x.2).collect(),
            });
            return;
        }
        for &c in &cands[k] {
            if pick.iter().all(|x| x.0 != c.0) {
                pick.push(c);
                go(cands, pick, out);
                pick.pop();
            }
        }
    }
    go(&cands, &mut pick, &mut out);
    if out.is_empty() {
        return Err(InvariantError::InvalidModel("τ cannot be chosen injectively".into()));
    }
    Ok(out)
}

/// `τ` when the model pins it down uniquely.
pub fn compute_tau(m: &NormalPairModel) -> Result<Tau, InvariantError> {
    let mut all = tau_assignments(m)?;
    if all.len() > 1 {
        return Err(InvariantError::InvalidModel(format!("τ is ambiguous: {} bijective choices", all.len())));
    }
    Ok(all.pop().expect("nonempty"))
}

/// `(σ, υ, s)` read off a model. The zone data may admit several bijective
/// choices of `τ` (a zone whose order equals the global `β` meets every
/// zone at that order); inadmissible choices are dropped, and several
/// survivors are reported as ambiguity.
pub fn recover_triple(m: &NormalPairModel) -> Result<Triple, InvariantError> {
    recover_triple_with(m, |_| true)
}

/// As [`recover_triple`], keeping only choices of `τ` accepted by `keep`
/// (extra geometric information the model does not carry).
pub fn recover_triple_with(m: &NormalPairModel, keep: impl Fn(&Tau) -> bool) -> Result<Triple, InvariantError> {
    let sigma = compute_sigma(m)?;
    let all = tau_assignments(m)?;
    let mut ok = Vec::new();
    let several = all.len() > 1;
    for tau in all.into_iter().filter(|t| keep(t)) {
        let t = Triple::new(sigma.clone(), tau.upsilon, tau.sign)?;
        if !several || check_admissible(&m.lambda, &t)?.passes() {
            ok.push(t);
        }
    }
    match ok.len() {
        1 => Ok(ok.pop().expect("one")),
        0 => Err(InvariantError::InvalidModel("no admissible choice of τ".into())),
        n => Err(InvariantError::InvalidModel(format!("τ is ambiguous: {n} admissible choices"))),
    }
}
