//! The complete invariant of a normal pair and its comparison.

use serde::{Deserialize, Serialize};

use super::varpi::{compute_omega, compute_varpi};
use super::{InvariantError, Sign, Triple};
use crate::blocks::Permutation;
use crate::pizza::AbstractPizza;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BundleJson", into = "BundleJson")]
pub struct InvariantBundle {
    pub lambda: AbstractPizza,
    pub lambda_prime: AbstractPizza,
    pub triple: Triple,
    pub omega: Permutation,
    pub varpi: Permutation,
}

impl InvariantBundle {
    /// Derives `ω` and `ϖ` from `Λ` and the triple.
    pub fn new(lambda: AbstractPizza, lambda_prime: AbstractPizza, triple: Triple) -> Result<Self, InvariantError> {
        let (m, mp) = (lambda.maximum_zones().len(), lambda_prime.maximum_zones().len());
        let (l, lp) = (lambda.coherent_slices().len(), lambda_prime.coherent_slices().len());
        if m != mp || l != lp {
            return Err(InvariantError::Shape(format!(
                "Λ has (m, L) = ({m}, {l}) but Λ′ has ({mp}, {lp})"
            )));
        }
        let omega = compute_omega(&lambda, &triple)?;
        let varpi = compute_varpi(&lambda, &triple)?;
        Ok(InvariantBundle { lambda, lambda_prime, triple, omega, varpi })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.triple.sigma
    }

    pub fn upsilon(&self) -> &Permutation {
        &self.triple.upsilon
    }

    pub fn sign(&self) -> &[Sign] {
        &self.triple.sign
    }
}

/// Wire form: 1-based `σ`, `υ`, `ω`; 0-based `ϖ`. The derived `ω` and `ϖ`
/// may be omitted on input; when present they must match.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleJson {
    pub lambda: AbstractPizza,
    pub lambda_prime: AbstractPizza,
    pub sigma: Vec<usize>,
    pub upsilon: Vec<usize>,
    pub sign: Vec<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varpi: Option<Vec<usize>>,
}

impl From<InvariantBundle> for BundleJson {
    fn from(b: InvariantBundle) -> Self {
        BundleJson {
            sigma: b.triple.sigma.one_based(),
            upsilon: b.triple.upsilon.one_based(),
            sign: b.triple.sign,
            omega: Some(b.omega.one_based()),
            varpi: Some(b.varpi.images().to_vec()),
            lambda: b.lambda,
            lambda_prime: b.lambda_prime,
        }
    }
}

impl TryFrom<BundleJson> for InvariantBundle {
    type Error = InvariantError;
    /// Recomputes `ω`, `ϖ` and rejects a bundle whose stored values differ.
    fn try_from(j: BundleJson) -> Result<Self, InvariantError> {
        let triple = Triple::new(
            Permutation::from_one_based(&j.sigma)?,
            Permutation::from_one_based(&j.upsilon)?,
            j.sign,
        )?;
        let b = InvariantBundle::new(j.lambda, j.lambda_prime, triple)?;
        if let Some(w) = j.omega.filter(|w| *w != b.omega.one_based()) {
            return Err(InvariantError::Shape(format!("stored omega {w:?} differs from {:?}", b.omega.one_based())));
        }
        if let Some(w) = j.varpi.filter(|w| w != b.varpi.images()) {
            return Err(InvariantError::Shape(format!("stored varpi {w:?} differs from {}", b.varpi)));
        }
        Ok(b)
    }
}

/// First component on which two bundles differ.
pub fn bundle_difference(a: &InvariantBundle, b: &InvariantBundle) -> Option<String> {
    if let Some(d) = a.lambda.difference(&b.lambda) {
        return Some(format!("lambda: {d}"));
    }
    if let Some(d) = a.lambda_prime.difference(&b.lambda_prime) {
        return Some(format!("lambda_prime: {d}"));
    }
    if a.triple.sigma != b.triple.sigma {
        return Some(format!("sigma: {:?} vs {:?}", a.triple.sigma.one_based(), b.triple.sigma.one_based()));
    }
    if a.triple.upsilon != b.triple.upsilon {
        return Some(format!("upsilon: {:?} vs {:?}", a.triple.upsilon.one_based(), b.triple.upsilon.one_based()));
    }
    if let Some(k) = (0..a.triple.sign.len()).find(|&k| a.triple.sign[k] != b.triple.sign[k]) {
        return Some(format!("sign[{}]: {} vs {}", k + 1, a.triple.sign[k], b.triple.sign[k]));
    }
    None
}

pub fn equivalent_bundles(a: &InvariantBundle, b: &InvariantBundle) -> bool {
    bundle_difference(a, b).is_none()
}
