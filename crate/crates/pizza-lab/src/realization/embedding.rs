//! Explicit normal pairs as families of monomial arcs in
//! `(u, v, z, w₁, …, w_{𝒩−1})`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::slice::SliceFormula;
use super::RealizationError;
use crate::exact::{ExtRational, Fin, MonoArc, MonomialSeries, Q};
use crate::invariant::InvariantBundle;
use crate::pizza::PairClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum ArcRole {
    /// `λ̌_k` on `T`.
    Lambda(usize),
    /// `λ̌′_{k′}` on `T′`.
    LambdaPrime(usize),
    /// `θ⁺_{k′}`, lifted from `λ̌′_{k′}` into `w_{k′+1}`.
    ThetaPlus(usize),
    /// `θ⁻_{k′}`, lifted from `λ̌′_{k′}` into `w_{k′}`.
    ThetaMinus(usize),
}

impl fmt::Display for ArcRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcRole::Lambda(k) => write!(f, "lambda_{k}"),
            ArcRole::LambdaPrime(k) => write!(f, "lambda'_{k}"),
            ArcRole::ThetaPlus(k) => write!(f, "theta+_{k}"),
            ArcRole::ThetaMinus(k) => write!(f, "theta-_{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedArc {
    pub name: String,
    pub role: ArcRole,
    pub coords: MonoArc,
}

impl NamedArc {
    pub fn new(role: ArcRole, coords: MonoArc) -> Self {
        NamedArc { name: role.to_string(), role, coords }
    }
}

/// The graph over a coherent slice of `T`: `z = f(u, v)` with `f` the
/// standard slice transported over `T`'s pair `(k−1, k)`; it is the `T′` pair
/// `(k′−1, k′)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimaryPiece {
    pub t_pair: usize,
    pub t_prime_pair: usize,
    pub formula: SliceFormula,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEmbedding {
    pub dim: usize,
    pub arcs_t: Vec<NamedArc>,
    /// `T′` arcs in the orientation of `T′`; a secondary pair contributes
    /// `θ⁺_{k′−1}, θ⁻_{k′}` between its two `λ̌′` arcs.
    pub arcs_t_prime: Vec<NamedArc>,
    /// Class of each `T′` pair `(k′−1, k′)` at index `k′ − 1`.
    pub pair_classes: Vec<PairClass>,
    pub primary: Vec<PrimaryPiece>,
    /// Bundle the construction was asked to carry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requested: Option<InvariantBundle>,
}

/// Arc `(u, v, z, w)` with `w` placed in slot `k` (1-based) when present.
pub(crate) fn make_arc(dim: usize, v: &MonomialSeries, z: &MonomialSeries, w: Option<(usize, &MonomialSeries)>) -> MonoArc {
    let mut tail = vec![MonomialSeries::zero(); dim - 1];
    tail[0] = v.clone();
    tail[1] = z.clone();
    if let Some((k, s)) = w {
        tail[1 + k] = s.clone();
    }
    MonoArc::new(tail).expect("realization coordinates have order ≥ 1")
}

impl PairEmbedding {
    /// Arc count `𝒩` of each side.
    pub fn n(&self) -> usize {
        self.arcs_t.len()
    }

    /// All arcs, `T` first.
    pub fn all_arcs(&self) -> impl Iterator<Item = &NamedArc> {
        self.arcs_t.iter().chain(&self.arcs_t_prime)
    }

    pub fn names(&self) -> Vec<String> {
        self.all_arcs().map(|a| a.name.clone()).collect()
    }

    /// Position in `arcs_t_prime` of `λ̌′_{k′}`, for each `k′`.
    pub fn lambda_prime_positions(&self) -> Vec<usize> {
        let mut out: Vec<(usize, usize)> = self
            .arcs_t_prime
            .iter()
            .enumerate()
            .filter_map(|(i, a)| match a.role {
                ArcRole::LambdaPrime(k) => Some((k, i)),
                _ => None,
            })
            .collect();
        out.sort();
        out.into_iter().map(|x| x.1).collect()
    }

    /// Positions of `θ⁺_{k′−1}` and `θ⁻_{k′}` for a secondary pair `k′`.
    pub fn theta_positions(&self, kp: usize) -> Option<(usize, usize)> {
        let find = |r: ArcRole| self.arcs_t_prime.iter().position(|a| a.role == r);
        Some((find(ArcRole::ThetaPlus(kp - 1))?, find(ArcRole::ThetaMinus(kp))?))
    }

    pub fn piece_on_t(&self, k: usize) -> Option<&PrimaryPiece> {
        self.primary.iter().find(|p| p.t_pair == k)
    }

    pub fn piece_on_t_prime(&self, kp: usize) -> Option<&PrimaryPiece> {
        self.primary.iter().find(|p| p.t_prime_pair == kp)
    }

    /// Structural checks: dimensions, roles, the `T′` arc order and metadata.
    pub fn validate(&self) -> Result<(), RealizationError> {
        let bad = |s: String| Err(RealizationError::Embedding(s));
        let n = self.n();
        if n < 2 {
            return Err(RealizationError::Empty);
        }
        if self.dim != n + 2 {
            return bad(format!("dimension {} but 𝒩 + 2 = {}", self.dim, n + 2));
        }
        if let Some(a) = self.all_arcs().find(|a| a.coords.dim() != self.dim) {
            return bad(format!("arc {} has dimension {}", a.name, a.coords.dim()));
        }
        if let Some(a) = self.all_arcs().find(|a| a.name != a.role.to_string()) {
            return bad(format!("arc name {} does not match its role {}", a.name, a.role));
        }
        for (k, a) in self.arcs_t.iter().enumerate() {
            if a.role != ArcRole::Lambda(k) {
                return bad(format!("T arc {k} has role {}", a.role));
            }
        }
        if self.pair_classes.len() != n - 1 {
            return bad(format!("{} pair classes for {n} arcs", self.pair_classes.len()));
        }
        let mut expected = vec![ArcRole::LambdaPrime(0)];
        for kp in 1..n {
            if self.pair_classes[kp - 1] != PairClass::Primary {
                expected.extend([ArcRole::ThetaPlus(kp - 1), ArcRole::ThetaMinus(kp)]);
            }
            expected.push(ArcRole::LambdaPrime(kp));
        }
        let got: Vec<ArcRole> = self.arcs_t_prime.iter().map(|a| a.role).collect();
        if got != expected {
            return bad("T′ arcs are not λ′₀, (θ⁺, θ⁻,) λ′₁, … in pair order".into());
        }
        for (i, pc) in self.primary.iter().enumerate() {
            if !(1..n).contains(&pc.t_pair) || !(1..n).contains(&pc.t_prime_pair) {
                return bad(format!("primary piece {i} indexes outside 1..{n}"));
            }
            if self.pair_classes[pc.t_prime_pair - 1] != PairClass::Primary {
                return bad(format!("primary piece {i} sits on a secondary T′ pair"));
            }
            if self.primary[..i].iter().any(|o| o.t_pair == pc.t_pair || o.t_prime_pair == pc.t_prime_pair) {
                return bad(format!("primary piece {i} repeats a pair"));
            }
        }
        let primaries = self.pair_classes.iter().filter(|&&c| c == PairClass::Primary).count();
        if primaries != self.primary.len() {
            return bad(format!("{primaries} primary T′ pairs but {} pieces", self.primary.len()));
        }
        Ok(())
    }
}

/// The `(q⁺, q⁻, β)`-model over `T_β`: arcs `λ±` of `T`, and on `T′` the lifts
/// `λ′± = λ± + u^{q±}` in `z` and `θ± = λ′± + u^β` in `w`.
pub fn model_pair(qplus: ExtRational, qminus: ExtRational, beta: Q) -> Result<PairEmbedding, RealizationError> {
    let one = Q::from_integer(1);
    let (Fin(qp), Fin(qm)) = (qplus, qminus) else {
        return Err(RealizationError::Exponents("model orders must be finite".into()));
    };
    if beta < one || qp < one || qm < one || beta > qp.min(qm) {
        return Err(RealizationError::Exponents(format!("need 1 ≤ β ≤ min(q⁺, q⁻); got β = {beta}, q± = {qp}, {qm}")));
    }
    let class = PairClass::classify_secondary(qplus, qminus, beta).expect("β ≤ min(q⁺, q⁻)");
    let dim = 4;
    let (zero, vb) = (MonomialSeries::zero(), MonomialSeries::power(Fin(beta)));
    let (zp, zm) = (MonomialSeries::power(qplus), MonomialSeries::power(qminus));
    let arcs_t = vec![
        NamedArc::new(ArcRole::Lambda(0), make_arc(dim, &zero, &zero, None)),
        NamedArc::new(ArcRole::Lambda(1), make_arc(dim, &vb, &zero, None)),
    ];
    let arcs_t_prime = vec![
        NamedArc::new(ArcRole::LambdaPrime(0), make_arc(dim, &zero, &zp, None)),
        NamedArc::new(ArcRole::ThetaPlus(0), make_arc(dim, &zero, &zp, Some((1, &vb)))),
        NamedArc::new(ArcRole::ThetaMinus(1), make_arc(dim, &vb, &zm, Some((1, &vb)))),
        NamedArc::new(ArcRole::LambdaPrime(1), make_arc(dim, &vb, &zm, None)),
    ];
    Ok(PairEmbedding { dim, arcs_t, arcs_t_prime, pair_classes: vec![class], primary: Vec::new(), requested: None })
}
