//! The combinatorial invariant of a normal pair: `σ`, `τ = (υ, s)`,
//! caravans, `ω`, `ϖ`, allowability and admissibility.
//!
//! Maximum zones `M_i`, coherent-slice ordinals and the entries of `σ`, `υ`,
//! `ω` are 1-based in all user-facing data; [`Permutation`] stores them
//! 0-based. `ϖ` acts on arc indices `0..𝒩` and is 0-based throughout.

mod bundle;
mod caravan;
mod model;
mod varpi;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::{BlockError, Permutation};
use crate::pizza::{AbstractPizza, PizzaError};

pub use bundle::{bundle_difference, equivalent_bundles, BundleJson, InvariantBundle};
pub use caravan::{check_allowable, compute_caravans, j_minus, AllowViolation, Caravan, Clause, Direction};
pub use model::{compute_sigma, compute_tau, recover_triple, recover_triple_with, tau_assignments, ModelJson, NormalPairModel, Tau};
pub use varpi::{
    check_admissible, check_determined, compute_omega, compute_varpi, layout, AdmissibilityReport, KElem,
    Layout,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Pizza(#[from] PizzaError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("triple does not fit the pizza: {0}")]
    Shape(String),
    #[error("triple is not allowable: {}", join(.0))]
    NotAllowable(Vec<AllowViolation>),
    #[error("no permutation satisfies condition {condition}: {detail}")]
    Determination { condition: u8, detail: String },
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A candidate `(σ, υ, s)` for a pizza with `m` maxima and `L` coherent slices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TripleJson", into = "TripleJson")]
pub struct Triple {
    pub sigma: Permutation,
    pub upsilon: Permutation,
    pub sign: Vec<Sign>,
}

impl Triple {
    pub fn new(sigma: Permutation, upsilon: Permutation, sign: Vec<Sign>) -> Result<Self, InvariantError> {
        if upsilon.len() != sign.len() {
            return Err(InvariantError::Shape(format!(
                "upsilon has {} entries but sign has {}",
                upsilon.len(),
                sign.len()
            )));
        }
        Ok(Triple { sigma, upsilon, sign })
    }

    pub fn identity(m: usize, sign: Vec<Sign>) -> Self {
        Triple { sigma: Permutation::identity(m), upsilon: Permutation::identity(sign.len()), sign }
    }

    /// `σ(i)` for 1-based `i`, 1-based result.
    pub fn sigma_of(&self, i: usize) -> usize {
        self.sigma.apply(i - 1) + 1
    }

    /// `υ(k)` for 1-based `k`, 1-based result.
    pub fn upsilon_of(&self, k: usize) -> usize {
        self.upsilon.apply(k - 1) + 1
    }

    /// `s(k)` for 1-based `k`.
    pub fn sign_of(&self, k: usize) -> Sign {
        self.sign[k - 1]
    }

    pub fn check_shape(&self, p: &AbstractPizza) -> Result<(), InvariantError> {
        let m = p.maximum_zones().len();
        let l = p.coherent_slices().len();
        if self.sigma.len() != m {
            return Err(InvariantError::Shape(format!("sigma has {} entries, pizza has {m} maximum zones", self.sigma.len())));
        }
        if self.upsilon.len() != l || self.sign.len() != l {
            return Err(InvariantError::Shape(format!(
                "upsilon/sign have {}/{} entries, pizza has {l} coherent slices",
                self.upsilon.len(),
                self.sign.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ob = |p: &Permutation| p.one_based().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let s: String = self.sign.iter().map(|s| s.to_string()).collect();
        write!(f, "σ=({}) υ=({}) s=({})", ob(&self.sigma), ob(&self.upsilon), s)
    }
}

/// Wire form of a triple (1-based permutations).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleJson {
    pub sigma: Vec<usize>,
    pub upsilon: Vec<usize>,
    pub sign: Vec<Sign>,
}

impl TryFrom<TripleJson> for Triple {
    type Error = InvariantError;
    fn try_from(j: TripleJson) -> Result<Self, InvariantError> {
        Triple::new(Permutation::from_one_based(&j.sigma)?, Permutation::from_one_based(&j.upsilon)?, j.sign)
    }
}

impl From<Triple> for TripleJson {
    fn from(t: Triple) -> Self {
        TripleJson { sigma: t.sigma.one_based(), upsilon: t.upsilon.one_based(), sign: t.sign }
    }
}

#[cfg(test)]
mod tests;
