use super::{AbstractPizza, PizzaError, Width};
use crate::exact::{AffineMap, ExtRational, Fin, Q};

/// The minimal totally transverse pizza with the given supporting profile:
/// `n` triangles with exponents `β̄_j` between arcs of orders `q̄_0, …, q̄_n`.
///
/// A triangle is cut at a generic arc of order `β̄_j` exactly when both of
/// its endpoint orders exceed `β̄_j`; every resulting slice has identity width.
pub fn from_transverse_profile(betabar: &[Q], qbar: &[ExtRational]) -> Result<AbstractPizza, PizzaError> {
    let n = betabar.len();
    if n == 0 || qbar.len() != n + 1 {
        return Err(PizzaError::Profile(format!(
            "{} exponents need {} orders, got {}",
            n,
            n + 1,
            qbar.len()
        )));
    }
    for j in 1..n {
        let m = betabar[j - 1].max(betabar[j]);
        if qbar[j] <= Fin(m) {
            return Err(PizzaError::Profile(format!("interior order q̄[{j}] must exceed {m}")));
        }
    }
    if qbar[0] < Fin(betabar[0]) {
        return Err(PizzaError::Profile("q̄[0] below the first exponent".into()));
    }
    if qbar[n] < Fin(betabar[n - 1]) {
        return Err(PizzaError::Profile(format!("q̄[{n}] below the last exponent")));
    }

    let mut q = vec![qbar[0]];
    let mut beta = Vec::new();
    let mut mu = Vec::new();
    let id = Width::Affine(AffineMap::identity());
    for j in 0..n {
        let b = betabar[j];
        let (lo, hi) = (qbar[j], qbar[j + 1]);
        if lo > Fin(b) && hi > Fin(b) {
            q.extend([Fin(b), hi]);
            beta.extend([b, b]);
            mu.extend([id, id]);
        } else {
            q.push(hi);
            beta.push(b);
            mu.push(if lo == hi { Width::Point } else { id });
        }
    }
    let p = AbstractPizza::new(q, beta, mu)?;
    if let Some(v) = p.validate().first() {
        return Err(PizzaError::Invalid(v.to_string()));
    }
    Ok(p)
}
