//! Permutations and their blocks.
//!
//! A *block* of `χ` is a segment `J` of indices whose image `χ(J)` is again
//! a segment. Minimal blocks are found by closing a set under
//! `J ↦ χ⁻¹(hull(χ(hull(J))))`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::ExtRational;
use crate::table::TordTable;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("not a permutation: {0}")]
    NotBijective(String),
    #[error("empty index set")]
    Empty,
    #[error("index {index} out of range 0..{len}")]
    OutOfRange { index: usize, len: usize },
    #[error("table is {table}×{table} but permutation has {len} elements")]
    TableSize { table: usize, len: usize },
}

/// A permutation of `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = BlockError;
    fn try_from(v: Vec<usize>) -> Result<Self, BlockError> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, BlockError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(BlockError::NotBijective(format!("image {x} at {i} is not below {n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(BlockError::NotBijective(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// Reads images in `{1, …, n}`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, BlockError> {
        if images.contains(&0) {
            return Err(BlockError::NotBijective("0 in a 1-based permutation".into()));
        }
        Permutation::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Swaps the images of `i` and `j`.
    pub fn transposed(&self, i: usize, j: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(i, j);
        Permutation { images }
    }

    fn check(&self, i: usize) -> Result<(), BlockError> {
        if i >= self.len() {
            return Err(BlockError::OutOfRange { index: i, len: self.len() });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An inclusive index segment `{lo, …, hi}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
}

impl Segment {
    pub fn new(lo: usize, hi: usize) -> Self {
        Segment { lo: lo.min(hi), hi: lo.max(hi) }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}..{}}}", self.lo, self.hi)
    }
}

fn hull_of_images(chi: &Permutation, seg: Segment) -> Segment {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for i in seg.indices() {
        let x = chi.apply(i);
        lo = lo.min(x);
        hi = hi.max(x);
    }
    Segment { lo, hi }
}

pub fn is_block(chi: &Permutation, seg: Segment) -> Result<bool, BlockError> {
    chi.check(seg.hi)?;
    Ok(hull_of_images(chi, seg).len() == seg.len())
}

/// The minimal block containing `j`, and the number of closure steps used.
pub fn minimal_block_steps(chi: &Permutation, j: &[usize]) -> Result<(Segment, usize), BlockError> {
    let (&first, rest) = j.split_first().ok_or(BlockError::Empty)?;
    for &i in j {
        chi.check(i)?;
    }
    let inv = chi.inverse();
    let mut seg = rest.iter().fold(Segment::new(first, first), |s, &i| Segment::new(s.lo.min(i), s.hi.max(i)));
    let mut steps = 0;
    loop {
        let image = hull_of_images(chi, seg);
        let back = hull_of_images(&inv, image);
        if back == seg {
            return Ok((seg, steps));
        }
        seg = back;
        steps += 1;
    }
}

pub fn minimal_block(chi: &Permutation, j: &[usize]) -> Result<Segment, BlockError> {
    minimal_block_steps(chi, j).map(|(s, _)| s)
}

/// All blocks of `χ`, shortest first.
pub fn all_blocks(chi: &Permutation) -> Vec<Segment> {
    let n = chi.len();
    let mut out = Vec::new();
    for len in 1..=n {
        for lo in 0..=n - len {
            let s = Segment::new(lo, lo + len - 1);
            if hull_of_images(chi, s).len() == len {
                out.push(s);
            }
        }
    }
    out
}

/// `tord(i, j) > tord(k, l)` with `{k, l}` inside the minimal block of `{i, j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub outer: ExtRational,
    pub inner: ExtRational,
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tord({},{}) = {} exceeds tord({},{}) = {}",
            self.i, self.j, self.outer, self.k, self.l, self.inner
        )
    }
}

/// Checks `tord(i,j) ≤ tord(k,l)` for every `{k,l}` in the minimal block of
/// `{i,j}`. Reports the smallest inner pair for each violating `(i, j)`.
pub fn check_block_inequalities(chi: &Permutation, tords: &TordTable) -> Result<Vec<BlockViolation>, BlockError> {
    let n = chi.len();
    if tords.len() != n {
        return Err(BlockError::TableSize { table: tords.len(), len: n });
    }
    // seg_min[a][b]: smallest tord among pairs inside {a..b}, with its pair.
    let mut seg_min: Vec<Vec<Option<(ExtRational, usize, usize)>>> = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let mut best = seg_min[a][b - 1];
            for k in a..b {
                let v = tords.get(k, b);
                if best.is_none_or(|(w, _, _)| v < w) {
                    best = Some((v, k, b));
                }
            }
            seg_min[a][b] = best;
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = minimal_block(chi, &[i, j])?;
            let (inner, k, l) = seg_min[b.lo][b.hi].expect("block has ≥ 2 elements");
            let outer = tords.get(i, j);
            if outer > inner {
                out.push(BlockViolation { i, j, k, l, outer, inner });
            }
        }
    }
    Ok(out)
}

/// Iterator over all permutations of `{0..n}` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some((0..n).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut v = cur.clone();
        if let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
            v.swap(i - 1, j);
            v[i..].reverse();
            next = Some(v);
        }
        Some(Permutation { images: cur })
    })
}
