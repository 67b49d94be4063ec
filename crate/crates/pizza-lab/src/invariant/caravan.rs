//! Adjacency, ties, caravans and the allowability clauses.

use std::fmt;

use serde::Serialize;

use super::{InvariantError, Sign, Triple};
use crate::exact::{ExtRational, Inf};
use crate::pizza::{AbstractPizza, PizzaError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rightward,
    Leftward,
}

/// A maximal caravan. `slices` lists its coherent members in travel order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Caravan {
    pub direction: Direction,
    pub slices: Vec<usize>,
    /// 1-based indices `i` of the maximum zones `M_i` adjacent to the last member.
    pub adjacent: Vec<usize>,
}

fn zone_tord(p: &AbstractPizza, a: usize, b: usize) -> ExtRational {
    if a == b {
        Inf
    } else {
        p.internal_tord(a, b)
    }
}

/// Maximum zones adjacent to slice `l` in direction `dir`, or `None` when
/// the direction does not apply (`q_ℓ < q_{ℓ−1}` for rightward, and
/// symmetrically).
pub(crate) fn adjacent(p: &AbstractPizza, maxima: &[usize], l: usize, dir: Direction) -> Option<Vec<usize>> {
    let (arc, other) = match dir {
        Direction::Rightward => (l, l - 1),
        Direction::Leftward => (l - 1, l),
    };
    let level = p.q(arc);
    if level < p.q(other) {
        return None;
    }
    Some(
        maxima
            .iter()
            .enumerate()
            .filter(|&(_, &z)| zone_tord(p, arc, z) >= level)
            .map(|(i, _)| i + 1)
            .collect(),
    )
}

fn partner(p: &AbstractPizza, l: usize, dir: Direction) -> Option<usize> {
    let n = p.p() as isize;
    let step: isize = if dir == Direction::Rightward { 1 } else { -1 };
    let at = |d: isize| {
        let x = l as isize + d * step;
        (1..=n).contains(&x).then_some(x as usize)
    };
    let next = at(1)?;
    if p.is_coherent(next) {
        return Some(next);
    }
    let after = at(2)?;
    p.is_coherent(after).then_some(after)
}

/// The caravan run starting at `l` in direction `dir`: its coherent members
/// and adjacent set. `None` when `l` is not eligible in that direction.
pub(crate) fn run(
    p: &AbstractPizza,
    maxima: &[usize],
    l: usize,
    dir: Direction,
) -> Result<Option<(Vec<usize>, Vec<usize>)>, InvariantError> {
    let Some(mut adj) = adjacent(p, maxima, l, dir) else {
        return Ok(None);
    };
    let mut members = vec![l];
    let mut cur = l;
    while adj.is_empty() {
        let next = partner(p, cur, dir).ok_or_else(|| {
            PizzaError::Invalid(format!("slice {cur} is tied ({dir:?}) but has no partner"))
        })?;
        adj = adjacent(p, maxima, next, dir).ok_or_else(|| {
            PizzaError::Invalid(format!("slice {next}, partner of tied slice {cur}, cannot continue {dir:?}"))
        })?;
        members.push(next);
        cur = next;
    }
    Ok(Some((members, adj)))
}

pub fn compute_caravans(p: &AbstractPizza) -> Result<Vec<Caravan>, InvariantError> {
    if let Some((index, kind)) = p.first_reduction() {
        return Err(PizzaError::NotMinimal { index, kind }.into());
    }
    let maxima = p.maximum_zones();
    let coherent = p.coherent_slices();
    let mut out: Vec<Caravan> = Vec::new();
    for dir in [Direction::Rightward, Direction::Leftward] {
        let mut runs = Vec::new();
        for &l in &coherent {
            if let Some((slices, adjacent)) = run(p, &maxima, l, dir)? {
                runs.push(Caravan { direction: dir, slices, adjacent });
            }
        }
        // Runs are nested suffixes of one another; keep the maximal ones.
        let maximal: Vec<Caravan> = runs
            .iter()
            .filter(|c| !runs.iter().any(|d| d.slices.len() > c.slices.len() && d.slices.ends_with(&c.slices)))
            .cloned()
            .collect();
        out.extend(maximal);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    A1,
    A2,
    A3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AllowViolation {
    pub clause: Clause,
    pub detail: String,
}

impl fmt::Display for AllowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) {}", self.clause, self.detail)
    }
}

/// `j₋` of one caravan for the sign of its members.
fn caravan_j(dir: Direction, sign: Sign, adjacent: &[usize], t: &Triple) -> usize {
    let images = adjacent.iter().map(|&i| t.sigma_of(i));
    match (dir, sign) {
        (Direction::Rightward, Sign::Plus) | (Direction::Leftward, Sign::Minus) => {
            images.min().expect("nonempty adjacent set") - 1
        }
        _ => images.max().expect("nonempty adjacent set"),
    }
}

/// All `j₋` values attached to each coherent ordinal `k` (one per caravan
/// direction through the slice), in caravan order.
pub(crate) fn j_values(p: &AbstractPizza, t: &Triple) -> Result<Vec<Vec<(Direction, usize)>>, InvariantError> {
    let maxima = p.maximum_zones();
    let coherent = p.coherent_slices();
    let mut out = Vec::with_capacity(coherent.len());
    for (k, &l) in coherent.iter().enumerate() {
        let mut vals = Vec::new();
        for dir in [Direction::Rightward, Direction::Leftward] {
            if let Some((_, adj)) = run(p, &maxima, l, dir)? {
                vals.push((dir, caravan_j(dir, t.sign[k], &adj, t)));
            }
        }
        out.push(vals);
    }
    Ok(out)
}

/// `j₋` for each coherent ordinal, if all caravans through it agree.
pub fn j_minus(p: &AbstractPizza, t: &Triple) -> Result<Vec<Option<usize>>, InvariantError> {
    Ok(j_values(p, t)?
        .into_iter()
        .map(|v| {
            let first = v.first().map(|x| x.1)?;
            v.iter().all(|x| x.1 == first).then_some(first)
        })
        .collect())
}

pub fn check_allowable(p: &AbstractPizza, t: &Triple) -> Result<Vec<AllowViolation>, InvariantError> {
    t.check_shape(p)?;
    let caravans = compute_caravans(p)?;
    let coherent = p.coherent_slices();
    let ordinal = |l: usize| coherent.iter().position(|&x| x == l).expect("coherent member") + 1;
    let mut out = Vec::new();
    let mut bad = |clause, detail: String| out.push(AllowViolation { clause, detail });

    for c in &caravans {
        for w in c.slices.windows(2) {
            let (k, l) = (ordinal(w[0]), ordinal(w[1]));
            let (sk, sl) = (t.sign_of(k), t.sign_of(l));
            let shift = t.upsilon_of(l) as isize - t.upsilon_of(k) as isize;
            let d = l as isize - k as isize;
            let ok = sk == sl && shift == if sk == Sign::Plus { d } else { -d };
            if !ok {
                bad(
                    Clause::A1,
                    format!(
                        "coherent slices {k} and {l} share a {:?} caravan but have signs {sk}{sl} and υ-shift {shift}",
                        c.direction
                    ),
                );
            }
        }
    }

    let vals = j_values(p, t)?;
    for (k, v) in vals.iter().enumerate() {
        if v.len() == 2 && v[0].1 != v[1].1 {
            bad(
                Clause::A2,
                format!("coherent slice {} has j₋ = {} rightward but {} leftward", k + 1, v[0].1, v[1].1),
            );
        }
    }
    let mut by_image: Vec<usize> = (1..=coherent.len()).collect();
    by_image.sort_by_key(|&k| t.upsilon_of(k));
    for w in by_image.windows(2) {
        let hi = vals[w[0] - 1].iter().map(|x| x.1).max();
        let lo = vals[w[1] - 1].iter().map(|x| x.1).min();
        if let (Some(a), Some(b)) = (hi, lo) {
            if a > b {
                bad(
                    Clause::A2,
                    format!("υ({}) < υ({}) but j₋ drops from {a} to {b}", w[0], w[1]),
                );
            }
        }
    }

    for z in 1..p.p() {
        if !(p.is_coherent(z) && p.is_coherent(z + 1)) {
            continue;
        }
        let zc = p.zone_class(z)?;
        let (k, l) = (ordinal(z), ordinal(z + 1));
        if (!zc.transverse || zc.is_maximum()) && t.sign_of(k) != t.sign_of(l) {
            bad(
                Clause::A3,
                format!("coherent slices {k} and {l} share zone {z} but have signs {}{}", t.sign_of(k), t.sign_of(l)),
            );
        }
    }
    Ok(out)
}
