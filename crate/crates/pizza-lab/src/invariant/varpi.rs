//! The combined permutation `ω`, the arc permutation `ϖ` and admissibility.

use serde::Serialize;

use super::caravan::{check_allowable, j_minus};
use super::{AllowViolation, InvariantError, Sign, Triple};
use crate::blocks::{check_block_inequalities, BlockViolation, Permutation};
use crate::pizza::{build_twin_pre_pizza, AbstractPizza, TwinPrePizza};

/// An element of `𝒦`: a maximum zone `M_i` or the `k`-th coherent slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KElem {
    Max(usize),
    Slice(usize),
}

/// `𝒦` in the order of `T`, the images in the order of `T′`, and `j₋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub k_elems: Vec<KElem>,
    /// Elements of `𝒦` listed in the order their images take on `T′`.
    pub k_prime: Vec<KElem>,
    /// `j₋` of each coherent ordinal.
    pub j_minus: Vec<usize>,
}

/// Lays out `𝒦′` for an allowable triple.
pub fn layout(p: &AbstractPizza, t: &Triple) -> Result<Layout, InvariantError> {
    let v = check_allowable(p, t)?;
    if !v.is_empty() {
        return Err(InvariantError::NotAllowable(v));
    }
    let maxima = p.maximum_zones();
    let coherent = p.coherent_slices();
    let mut k_elems = Vec::new();
    let (mut i, mut k) = (0, 0);
    for pos in 0..=2 * p.p() {
        if pos % 2 == 0 && maxima.contains(&(pos / 2)) {
            i += 1;
            k_elems.push(KElem::Max(i));
        } else if pos % 2 == 1 && coherent.contains(&pos.div_ceil(2)) {
            k += 1;
            k_elems.push(KElem::Slice(k));
        }
    }
    let jm: Vec<usize> = j_minus(p, t)?.into_iter().map(|j| j.expect("allowable")).collect();
    let m = maxima.len();
    let sigma_inv = t.sigma.inverse();
    let mut by_image: Vec<usize> = (1..=coherent.len()).collect();
    by_image.sort_by_key(|&k| t.upsilon_of(k));
    let mut k_prime = Vec::with_capacity(k_elems.len());
    for j in 0..=m {
        k_prime.extend(by_image.iter().filter(|&&k| jm[k - 1] == j).map(|&k| KElem::Slice(k)));
        if j < m {
            k_prime.push(KElem::Max(sigma_inv.apply(j) + 1));
        }
    }
    Ok(Layout { k_elems, k_prime, j_minus: jm })
}

/// `ω` as a permutation of `0..K` (add 1 for the 1-based form).
pub fn compute_omega(p: &AbstractPizza, t: &Triple) -> Result<Permutation, InvariantError> {
    let lay = layout(p, t)?;
    let images = lay
        .k_elems
        .iter()
        .map(|e| lay.k_prime.iter().position(|x| x == e).expect("same elements"))
        .collect();
    Ok(Permutation::new(images)?)
}

fn determination(condition: u8, detail: String) -> InvariantError {
    InvariantError::Determination { condition, detail }
}

/// Builds `ϖ` by walking the images on `T′` and checks it against the five
/// determination conditions.
pub fn compute_varpi(p: &AbstractPizza, t: &Triple) -> Result<Permutation, InvariantError> {
    let tp = build_twin_pre_pizza(p)?;
    let lay = layout(p, t)?;
    let coherent = p.coherent_slices();
    let nn = tp.len();
    let mut seq: Vec<usize> = Vec::with_capacity(nn);
    for e in &lay.k_prime {
        let arcs = match *e {
            KElem::Max(i) => vec![tp.arc_of_maximum(i).expect("maximum zones are essential")],
            KElem::Slice(k) => {
                let kk = tp.primary_pair_of_slice(coherent[k - 1]).expect("coherent slices are primary");
                match t.sign_of(k) {
                    Sign::Plus => vec![kk - 1, kk],
                    Sign::Minus => vec![kk, kk - 1],
                }
            }
        };
        for a in arcs {
            if seq.last() != Some(&a) {
                seq.push(a);
            }
        }
    }
    if seq.first() != Some(&0) {
        if seq.contains(&0) {
            return Err(determination(1, "γ₁ is not the first arc on T′".into()));
        }
        seq.insert(0, 0);
    }
    if seq.last() != Some(&(nn - 1)) {
        if seq.contains(&(nn - 1)) {
            return Err(determination(1, "γ₂ is not the last arc on T′".into()));
        }
        seq.push(nn - 1);
    }
    let mut images = vec![usize::MAX; nn];
    for (pos, &a) in seq.iter().enumerate() {
        if images[a] != usize::MAX {
            return Err(determination(4, format!("arc {a} would occupy two places on T′")));
        }
        images[a] = pos;
    }
    if let Some(a) = images.iter().position(|&x| x == usize::MAX) {
        return Err(determination(3, format!("arc {a} has no place on T′")));
    }
    let varpi = Permutation::new(images)?;
    if let Some((condition, detail)) = determined_failures(&tp, p, t, &lay, &varpi).into_iter().next() {
        return Err(determination(condition, detail));
    }
    Ok(varpi)
}

fn determined_failures(
    tp: &TwinPrePizza,
    p: &AbstractPizza,
    t: &Triple,
    lay: &Layout,
    w: &Permutation,
) -> Vec<(u8, String)> {
    let nn = tp.len();
    let mut out = Vec::new();
    if w.len() != nn {
        out.push((1, format!("ϖ has {} entries, expected {nn}", w.len())));
        return out;
    }
    if w.apply(0) != 0 || w.apply(nn - 1) != nn - 1 {
        out.push((1, "boundary arcs are not fixed".into()));
    }
    let max_arcs: Vec<(usize, usize)> =
        tp.arcs.iter().enumerate().filter_map(|(a, tag)| tag.maximum.map(|i| (a, i))).collect();
    for &(a, i) in &max_arcs {
        for &(b, j) in &max_arcs {
            if (w.apply(a) < w.apply(b)) != (t.sigma_of(i) < t.sigma_of(j)) {
                out.push((2, format!("arcs {a}, {b} of M_{i}, M_{j} are ordered against σ")));
            }
        }
    }
    let coherent = p.coherent_slices();
    let pairs: Vec<usize> =
        coherent.iter().map(|&l| tp.primary_pair_of_slice(l).expect("coherent slices are primary")).collect();
    let place = |kk: usize| w.apply(kk - 1).max(w.apply(kk));
    for (k, &a) in pairs.iter().enumerate() {
        for (l, &b) in pairs.iter().enumerate() {
            if k != l && (place(a) < place(b)) != (t.upsilon_of(k + 1) < t.upsilon_of(l + 1)) {
                out.push((3, format!("coherent slices {}, {} are ordered against υ", k + 1, l + 1)));
            }
        }
    }
    for (k, &kk) in pairs.iter().enumerate() {
        let want = match t.sign_of(k + 1) {
            Sign::Plus => w.apply(kk) as isize - 1,
            Sign::Minus => w.apply(kk) as isize + 1,
        };
        if w.apply(kk - 1) as isize != want {
            out.push((4, format!("primary pair ({}, {kk}) does not land on adjacent arcs in the order of s", kk - 1)));
        }
    }
    for &(a, i) in &max_arcs {
        for (k, &kk) in pairs.iter().enumerate() {
            let before = w.apply(a) < place(kk);
            if before != (t.sigma_of(i) <= lay.j_minus[k]) {
                out.push((5, format!("arc {a} of M_{i} and coherent slice {} disagree with j₋", k + 1)));
            }
        }
    }
    out
}

/// Failed determination conditions `(number, message)` for a given `ϖ`.
pub fn check_determined(p: &AbstractPizza, t: &Triple, varpi: &Permutation) -> Result<Vec<(u8, String)>, InvariantError> {
    let tp = build_twin_pre_pizza(p)?;
    let lay = layout(p, t)?;
    Ok(determined_failures(&tp, p, t, &lay, varpi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub allowability: Vec<AllowViolation>,
    pub varpi: Option<Permutation>,
    pub determination: Option<String>,
    pub blocks: Vec<BlockViolation>,
}

impl AdmissibilityReport {
    pub fn passes(&self) -> bool {
        self.allowability.is_empty() && self.varpi.is_some() && self.blocks.is_empty()
    }

    /// One-line reason for failure, if any.
    pub fn failure(&self) -> Option<String> {
        if let Some(v) = self.allowability.first() {
            return Some(v.to_string());
        }
        if let Some(d) = &self.determination {
            return Some(d.clone());
        }
        self.blocks.first().map(|b| format!("block inequality: {b}"))
    }
}

pub fn check_admissible(p: &AbstractPizza, t: &Triple) -> Result<AdmissibilityReport, InvariantError> {
    let allowability = check_allowable(p, t)?;
    let mut report = AdmissibilityReport { allowability, varpi: None, determination: None, blocks: Vec::new() };
    if !report.allowability.is_empty() {
        return Ok(report);
    }
    match compute_varpi(p, t) {
        Ok(w) => {
            let tp = build_twin_pre_pizza(p)?;
            report.blocks = check_block_inequalities(&w, &tp.tord_table())?;
            report.varpi = Some(w);
        }
        Err(e @ InvariantError::Determination { .. }) => report.determination = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}
