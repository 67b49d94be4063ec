//! Abstract pizzas: validation, reduction, classification and the twin
//! pre-pizza skeleton.

mod enumerate;
mod json;
mod transverse;
mod twin;

use std::collections::HashSet;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, ExtRational, Fin, Inf, Q};
use crate::exact::AffineMap;

pub use enumerate::{enumerate_pizzas, for_each_pizza_with_orders, order_sequences, random_pizza, slice_options};
pub use json::PizzaJson;
pub use transverse::from_transverse_profile;
pub use twin::{
    build_twin_pre_pizza, twin_count_formula, twin_to_pizza, ArcTag, CountTerms, Pair, PairClass,
    TwinPrePizza, ZoneRep,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PizzaError {
    #[error("a pizza needs p ≥ 1 slices, p+1 orders and p widths (got {q} orders, {beta} betas, {mu} widths)")]
    Shape { q: usize, beta: usize, mu: usize },
    #[error("index {index} out of range {range}")]
    Index { index: usize, range: String },
    #[error("pizza is not minimal: clause ({kind}) applies at {index}")]
    NotMinimal { index: usize, kind: Reduction },
    #[error("invalid pizza: {0}")]
    Invalid(String),
    #[error("profile violates the max/min inequalities: {0}")]
    Profile(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Width data of one slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Width {
    /// `Q` is a single exponent and the width is the slice's `β`.
    Point,
    Affine(AffineMap),
}

/// The four reduction clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Reduction::A => "a",
            Reduction::B => "b",
            Reduction::C => "c",
            Reduction::D => "d",
        };
        f.write_str(c)
    }
}

/// A failed invariant, tied to a slice (1-based) or zone (0-based) index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub clause: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.clause, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Maximum,
    Minimum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZoneClass {
    pub extremum: Extremum,
    pub transverse: bool,
    pub boundary: bool,
}

impl ZoneClass {
    pub fn is_maximum(&self) -> bool {
        self.extremum == Extremum::Maximum
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceClass {
    Transverse,
    Coherent,
}

/// Slices are indexed `1..=p`, zones (and orders `q`) `0..=p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbstractPizza {
    q: Vec<ExtRational>,
    beta: Vec<Q>,
    mu: Vec<Width>,
    nu: Vec<ExtRational>,
}

fn width_at(w: &Width, beta: Q, q: ExtRational) -> Result<ExtRational, ExactError> {
    match w {
        Width::Point => Ok(Fin(beta)),
        Width::Affine(m) => m.eval(q),
    }
}

impl AbstractPizza {
    pub fn new(q: Vec<ExtRational>, beta: Vec<Q>, mu: Vec<Width>) -> Result<Self, PizzaError> {
        let p = beta.len();
        if p == 0 || q.len() != p + 1 || mu.len() != p {
            return Err(PizzaError::Shape { q: q.len(), beta: p, mu: mu.len() });
        }
        let mut nu = vec![Inf; p + 1];
        for l in 1..p {
            let left = width_at(&mu[l - 1], beta[l - 1], q[l])?;
            let right = width_at(&mu[l], beta[l], q[l])?;
            nu[l] = left.max(right);
        }
        Ok(AbstractPizza { q, beta, mu, nu })
    }

    pub fn p(&self) -> usize {
        self.beta.len()
    }

    pub fn q(&self, zone: usize) -> ExtRational {
        self.q[zone]
    }

    pub fn qs(&self) -> &[ExtRational] {
        &self.q
    }

    /// `β_ℓ`, slice index `1..=p`.
    pub fn beta(&self, slice: usize) -> Q {
        self.beta[slice - 1]
    }

    pub fn betas(&self) -> &[Q] {
        &self.beta
    }

    pub fn mu(&self, slice: usize) -> Width {
        self.mu[slice - 1]
    }

    pub fn widths(&self) -> &[Width] {
        &self.mu
    }

    pub fn nu(&self, zone: usize) -> ExtRational {
        self.nu[zone]
    }

    /// Exponent `ν` of a zone; at a boundary zone, the width of its slice there.
    pub fn zone_width(&self, zone: usize) -> ExtRational {
        if zone == 0 {
            self.width_at_end(1, 0)
        } else if zone == self.p() {
            self.width_at_end(zone, zone)
        } else {
            self.nu[zone]
        }
    }

    /// `Q_ℓ` as the ordered pair `(q_{ℓ−1}, q_ℓ)`.
    pub fn interval(&self, slice: usize) -> (ExtRational, ExtRational) {
        (self.q[slice - 1], self.q[slice])
    }

    pub fn is_point(&self, slice: usize) -> bool {
        self.q[slice - 1] == self.q[slice]
    }

    /// `μ_ℓ(x)`; a point slice has width `β_ℓ`.
    pub fn width_at(&self, slice: usize, x: ExtRational) -> Result<ExtRational, ExactError> {
        width_at(&self.mu[slice - 1], self.beta[slice - 1], x)
    }

    fn width_at_end(&self, slice: usize, zone: usize) -> ExtRational {
        // Checked at construction for interior zones; boundary ends may be
        // unbounded, in which case validation reports it.
        self.width_at(slice, self.q[zone]).unwrap_or(Inf)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |index: usize, clause: &str| {
            out.push(Violation { index, clause: clause.to_string() })
        };
        let one = Q::one();
        for (z, q) in self.q.iter().enumerate() {
            if *q < one {
                bad(z, "order below 1");
            }
        }
        for l in 1..=self.p() {
            let beta = self.beta(l);
            if beta < one {
                bad(l, "beta below 1");
            }
            let (q0, q1) = self.interval(l);
            match self.mu(l) {
                Width::Point => {
                    if q0 != q1 {
                        bad(l, "point width on a non-point interval");
                    } else if q0 < beta {
                        bad(l, "width exceeds order");
                    }
                }
                Width::Affine(m) => {
                    if q0 == q1 {
                        bad(l, "affine width on a point interval");
                        continue;
                    }
                    if m.is_constant() {
                        bad(l, "constant width on a non-point interval");
                    }
                    let (w0, w1) = match (m.eval(q0), m.eval(q1)) {
                        (Ok(w0), Ok(w1)) => (w0, w1),
                        _ => {
                            bad(l, "width unbounded at an infinite order");
                            continue;
                        }
                    };
                    let asymptotic_excess = |q: ExtRational| {
                        q.is_inf() && (m.a > one || (m.a == one && m.b > Q::from_integer(0)))
                    };
                    if w0 > q0 || w1 > q1 || asymptotic_excess(q0) || asymptotic_excess(q1) {
                        bad(l, "width exceeds order");
                    }
                    if w0.min(w1) != Fin(beta) {
                        bad(l, "minimum width differs from beta");
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// First clause among (a)–(d) merging slices `ℓ` and `ℓ+1`, `1 ≤ ℓ < p`.
    pub fn reducible_at(&self, l: usize) -> Result<Option<Reduction>, PizzaError> {
        if l == 0 || l >= self.p() {
            return Err(PizzaError::Index { index: l, range: format!("1..{}", self.p()) });
        }
        let (pl, pr) = (self.is_point(l), self.is_point(l + 1));
        let kind = match (pl, pr) {
            (true, true) => Some(Reduction::A),
            (true, false) if Fin(self.beta(l)) >= self.width_at_end(l + 1, l) => Some(Reduction::B),
            (false, true) if Fin(self.beta(l + 1)) >= self.width_at_end(l, l) => Some(Reduction::C),
            (false, false) => {
                let (a, b, c) = (self.q[l - 1], self.q[l], self.q[l + 1]);
                let monotone = (a < b && b < c) || (a > b && b > c);
                (monotone && self.mu(l) == self.mu(l + 1)).then_some(Reduction::D)
            }
            _ => None,
        };
        Ok(kind)
    }

    pub fn first_reduction(&self) -> Option<(usize, Reduction)> {
        (1..self.p()).find_map(|l| self.reducible_at(l).ok().flatten().map(|k| (l, k)))
    }

    pub fn is_minimal(&self) -> bool {
        self.first_reduction().is_none()
    }

    /// Merges slices `ℓ` and `ℓ+1` according to `kind`.
    pub fn merge_at(&self, l: usize, kind: Reduction) -> Result<AbstractPizza, PizzaError> {
        if l == 0 || l >= self.p() {
            return Err(PizzaError::Index { index: l, range: format!("1..{}", self.p()) });
        }
        let (w, beta) = match kind {
            Reduction::A => (Width::Point, self.beta(l).min(self.beta(l + 1))),
            Reduction::B => (self.mu(l + 1), self.beta(l + 1)),
            Reduction::C => (self.mu(l), self.beta(l)),
            Reduction::D => (self.mu(l), self.beta(l).min(self.beta(l + 1))),
        };
        let mut q = self.q.clone();
        q.remove(l);
        let mut betas = self.beta.clone();
        betas.splice(l - 1..=l, [beta]);
        let mut mu = self.mu.clone();
        mu.splice(l - 1..=l, [w]);
        AbstractPizza::new(q, betas, mu)
    }

    /// Left-to-right minimization; returns the merges applied, in order.
    pub fn minimize_logged(&self) -> (AbstractPizza, Vec<(usize, Reduction)>) {
        let mut cur = self.clone();
        let mut log = Vec::new();
        while let Some((l, kind)) = cur.first_reduction() {
            cur = cur.merge_at(l, kind).expect("merge of a reducible position");
            log.push((l, kind));
        }
        (cur, log)
    }

    pub fn minimize(&self) -> AbstractPizza {
        self.minimize_logged().0
    }

    /// Every minimal pizza reachable by applying reductions in any order.
    pub fn all_minimizations(&self) -> Vec<AbstractPizza> {
        let mut seen = HashSet::new();
        let mut finals = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(cur) = stack.pop() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            let mut any = false;
            for l in 1..cur.p() {
                if let Ok(Some(kind)) = cur.reducible_at(l) {
                    any = true;
                    stack.push(cur.merge_at(l, kind).expect("merge of a reducible position"));
                }
            }
            if !any && !finals.contains(&cur) {
                finals.push(cur);
            }
        }
        finals
    }

    /// Combinatorial equivalence: identical `p`, orders, betas, intervals and widths.
    pub fn equivalent(&self, other: &AbstractPizza) -> bool {
        self.q == other.q && self.beta == other.beta && self.mu == other.mu
    }

    /// First differing field, for diagnostics.
    pub fn difference(&self, other: &AbstractPizza) -> Option<String> {
        if self.p() != other.p() {
            return Some(format!("p ({} vs {})", self.p(), other.p()));
        }
        if let Some(z) = (0..=self.p()).find(|&z| self.q[z] != other.q[z]) {
            return Some(format!("q[{z}]"));
        }
        if let Some(l) = (1..=self.p()).find(|&l| self.beta(l) != other.beta(l)) {
            return Some(format!("beta[{l}]"));
        }
        (1..=self.p()).find(|&l| self.mu(l) != other.mu(l)).map(|l| format!("mu[{l}]"))
    }

    fn range_check(&self, zone: usize) -> Result<(), PizzaError> {
        if zone > self.p() {
            return Err(PizzaError::Index { index: zone, range: format!("0..={}", self.p()) });
        }
        Ok(())
    }

    /// Maximum/minimum and transverse/coherent type of zone `D_ℓ`.
    pub fn zone_class(&self, zone: usize) -> Result<ZoneClass, PizzaError> {
        self.range_check(zone)?;
        let p = self.p();
        let q = &self.q;
        let boundary = zone == 0 || zone == p;
        let mut maximum = true;
        if zone == 0 {
            maximum &= Fin(self.beta(1)) < q[0] && q[0] >= q[1];
        }
        if zone == p {
            maximum &= Fin(self.beta(p)) < q[p] && q[p] >= q[p - 1];
        }
        if !boundary {
            let b = self.beta(zone).max(self.beta(zone + 1));
            maximum = Fin(b) < q[zone] && q[zone] >= q[zone - 1].max(q[zone + 1]);
        }
        let transverse = if zone == 0 {
            self.width_at_end(1, 0) == q[0]
        } else if zone == p {
            self.width_at_end(p, p) == q[p]
        } else {
            self.nu[zone] == q[zone]
        };
        Ok(ZoneClass {
            extremum: if maximum { Extremum::Maximum } else { Extremum::Minimum },
            transverse,
            boundary,
        })
    }

    pub fn slice_class(&self, slice: usize) -> Result<SliceClass, PizzaError> {
        if slice == 0 || slice > self.p() {
            return Err(PizzaError::Index { index: slice, range: format!("1..={}", self.p()) });
        }
        let single = self.p() == 1 && self.is_point(1) && self.q[0] <= Fin(self.beta(1));
        let identity = !self.is_point(slice)
            && matches!(self.mu(slice), Width::Affine(m) if m.is_identity());
        Ok(if single || identity { SliceClass::Transverse } else { SliceClass::Coherent })
    }

    pub fn is_coherent(&self, slice: usize) -> bool {
        self.slice_class(slice) == Ok(SliceClass::Coherent)
    }

    pub fn is_max_zone(&self, zone: usize) -> bool {
        self.zone_class(zone).map(|c| c.is_maximum()).unwrap_or(false)
    }

    /// Zone indices of maximum zones, left to right (`M_1, …, M_m`).
    pub fn maximum_zones(&self) -> Vec<usize> {
        (0..=self.p()).filter(|&z| self.is_max_zone(z)).collect()
    }

    /// Slice indices of coherent slices, left to right.
    pub fn coherent_slices(&self) -> Vec<usize> {
        (1..=self.p()).filter(|&l| self.is_coherent(l)).collect()
    }

    pub fn is_totally_transverse(&self) -> bool {
        self.coherent_slices().is_empty()
    }

    /// Tangency order of the delimiting arcs `λ_i`, `λ_j` inside the pizza.
    pub fn internal_tord(&self, i: usize, j: usize) -> ExtRational {
        let (a, b) = (i.min(j), i.max(j));
        (a + 1..=b).map(|l| Fin(self.beta(l))).min().unwrap_or(Inf)
    }
}

#[cfg(test)]
mod tests;
