//! Independent checking of an embedded normal pair: exact tangency tables,
//! recovery of the invariant from the table alone, and numeric sampling.

mod numeric;
mod oracle;
mod recover;

use serde::Serialize;
use thiserror::Error;

use crate::blocks::check_block_inequalities;
use crate::exact::{ExactError, ExtRational};
use crate::invariant::{bundle_difference, InvariantBundle, NormalPairModel};
use crate::par::Exec;
use crate::realization::{PairEmbedding, RealizationError};
use crate::table::TordTable;

pub use numeric::{
    default_grid, distance_samples, fit_slope, function_numeric_check, numeric_check, numeric_check_with, Discrepancy,
    DEFAULT_TOL,
};
pub use oracle::{check_cne, oracle_tord_table, oracle_tord_table_with, tord_table_of, CneVerdict, CNE_REPORTED};
pub use recover::{recover, Recovery, SideData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid embedding: {0}")]
    Embedding(#[from] RealizationError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("cannot recover {invariant}: {detail}")]
    Recovery { invariant: &'static str, detail: String },
}

impl From<crate::invariant::InvariantError> for VerifyError {
    fn from(e: crate::invariant::InvariantError) -> Self {
        VerifyError::Recovery { invariant: "model", detail: e.to_string() }
    }
}

/// One named pass/fail check with a short explanation on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passes: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passes: bool, detail: impl Into<String>) -> Self {
        Check { name, passes, detail: if passes { String::new() } else { detail.into() } }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub names: Vec<String>,
    pub table: Vec<Vec<ExtRational>>,
    pub cne_t: CneVerdict,
    pub cne_lambda_prime: CneVerdict,
    pub cne_t_prime: CneVerdict,
    pub checks: Vec<Check>,
    pub recovery: Recovery,
    pub numeric: Vec<Discrepancy>,
}

impl OracleReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passes)
    }

    pub fn model(&self) -> &NormalPairModel {
        &self.recovery.model
    }

    pub fn bundle(&self) -> &InvariantBundle {
        &self.recovery.bundle
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passes)
    }

    pub fn table(&self) -> TordTable {
        TordTable::from_rows(&self.table).expect("square symmetric table")
    }
}

pub fn verify_embedding(e: &PairEmbedding, grid: &[f64], tol: f64) -> Result<OracleReport, VerifyError> {
    verify_embedding_with(e, grid, tol, Exec::default())
}

pub fn verify_embedding_with(e: &PairEmbedding, grid: &[f64], tol: f64, exec: Exec) -> Result<OracleReport, VerifyError> {
    e.validate()?;
    let table = oracle_tord_table_with(e, exec)?;
    let rec = recover::recover(e, &table)?;
    let ix = recover::index(e);
    let n = e.n();

    let cne_t = check_cne(&table, &ix.t);
    let cne_lambda_prime = check_cne(&table, &ix.lambda_prime);
    let cne_t_prime = check_cne(&table, &ix.t_prime);
    let mut checks = Vec::new();

    let um = table.ultrametric_violations();
    checks.push(Check::new("ultrametric", um.is_empty(), format!("{} violating triples, first {:?}", um.len(), um.first())));
    for (name, v) in [("cne_t", &cne_t), ("cne_lambda_prime", &cne_lambda_prime), ("cne_t_prime", &cne_t_prime)] {
        checks.push(Check::new(name, v.passes, format!("first violation at {:?}", v.failures.first())));
    }
    let mv = rec.model.validate();
    checks.push(Check::new("model", mv.is_empty(), mv.join("; ")));
    checks.push(Check::new(
        "arc_count",
        rec.t_prime.q.len() == n,
        format!("{} arcs on T′, {n} on T", rec.t_prime.q.len()),
    ));
    let (lam, lamp) = (&rec.bundle.lambda, &rec.bundle.lambda_prime);
    let boundary =
        lam.q(0) == lamp.q(0) && lam.q(lam.p()) == lamp.q(lamp.p()) && table.get(0, ix.t_prime[0]) == lam.q(0)
            && table.get(n - 1, *ix.t_prime.last().expect("T′ arcs")) == lam.q(lam.p());
    checks.push(Check::new("boundary_pairs", boundary, "boundary arcs are not normally paired"));

    let varpi = &rec.bundle.varpi;
    let mut lp = TordTable::new(n);
    for a in 0..n {
        for b in a + 1..n {
            lp.set(a, b, table.get(ix.lambda_prime[varpi.apply(a)], ix.lambda_prime[varpi.apply(b)]));
        }
    }
    let blocks = check_block_inequalities(varpi, &lp).map_err(RealizationError::from)?;
    checks.push(Check::new("block_inequalities", blocks.is_empty(), format!("{:?}", blocks.first())));
    let bad_cross: Vec<usize> =
        (0..n).filter(|&k| table.get(k, ix.lambda_prime[varpi.apply(k)]) != rec.t.q[k]).collect();
    checks.push(Check::new("cross_orders", bad_cross.is_empty(), format!("arcs {bad_cross:?} miss their partner order")));
    let twin_q = (0..n).all(|k| rec.t_prime.q[varpi.apply(k)] == rec.t.q[k]);
    checks.push(Check::new("twin_orders", twin_q, "λ′ orders are not the T orders moved by ϖ"));
    if let Some(req) = &e.requested {
        let d = bundle_difference(req, &rec.bundle);
        checks.push(Check::new("requested_invariant", d.is_none(), d.unwrap_or_default()));
    }
    let numeric = numeric_check_with(e, grid, tol, exec);
    checks.push(Check::new(
        "numeric",
        numeric.is_empty(),
        numeric.first().map(|d| format!("{} discrepancies, first {}", numeric.len(), d.what)).unwrap_or_default(),
    ));

    Ok(OracleReport {
        names: e.names(),
        table: table.rows(),
        cne_t,
        cne_lambda_prime,
        cne_t_prime,
        checks,
        recovery: rec,
        numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::Permutation;
    use crate::fixtures;
    use crate::invariant::{compute_tau, equivalent_bundles, Sign, Triple};
    use crate::pizza::{from_transverse_profile, PairClass};
    use crate::realization::{model_pair, realize_general, realize_transverse};

    fn run(e: &PairEmbedding) -> OracleReport {
        let r = verify_embedding(e, &default_grid(), DEFAULT_TOL).unwrap();
        assert!(r.passes(), "{:?}", r.first_failure());
        r
    }

    #[test]
    fn varpi_fixture_round_trip() {
        let p = fixtures::varpi();
        let (e, b) = realize_general(&p, &Triple::identity(2, vec![Sign::Plus, Sign::Minus])).unwrap();
        let r = run(&e);
        assert!(equivalent_bundles(&b, r.bundle()));
        assert_eq!(r.bundle().lambda, p);
        let tau = compute_tau(r.model()).unwrap();
        assert_eq!(tau.slice_image, vec![1, 3]);
        assert_eq!(tau.sign, vec![Sign::Plus, Sign::Minus]);
        assert_eq!(r.bundle().varpi.images(), &[0, 1, 3, 2, 4]);
    }

    #[test]
    fn varpi2_has_one_boundary_twin() {
        let p = fixtures::varpi2();
        let (e, b) = realize_general(&p, &Triple::identity(1, vec![Sign::Minus])).unwrap();
        let r = run(&e);
        assert!(equivalent_bundles(&b, r.bundle()));
        let tau = compute_tau(r.model()).unwrap();
        assert_eq!((tau.slice_image, tau.sign), (vec![1], vec![Sign::Minus]));
        assert_eq!(r.bundle().lambda.coherent_slices(), vec![2]);
        assert_eq!(r.bundle().lambda_prime.p(), 2);
        assert!(!r.recovery.t.classes.contains(&PairClass::TwinPair));
        let c = &r.recovery.t_prime.classes;
        let twins: Vec<usize> = (0..c.len()).filter(|&k| c[k] == PairClass::TwinPair).collect();
        assert!(twins == [0] || twins == [c.len() - 1], "{c:?}");
    }

    #[test]
    fn transverse_profile_round_trip() {
        let (b, q) = fixtures::pi_profile();
        let p = from_transverse_profile(&b, &q).unwrap();
        let pi = Permutation::new(fixtures::PI.to_vec()).unwrap();
        let (e, bundle) = realize_transverse(&p, &pi).unwrap();
        let r = run(&e);
        assert_eq!(r.bundle().varpi, pi);
        assert!(equivalent_bundles(&bundle, r.bundle()));
    }

    #[test]
    fn model_pairs_verify() {
        use crate::exact::{q, qi, Fin};
        for (a, b, beta) in [(qi(3), qi(2), qi(1)), (qi(2), qi(2), qi(2)), (q(5, 2), qi(3), q(3, 2))] {
            let e = model_pair(Fin(a), Fin(b), beta).unwrap();
            let t = oracle_tord_table(&e).unwrap();
            assert!(t.is_ultrametric());
            assert!(check_cne(&t, &[0, 1]).passes);
        }
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let p = fixtures::varpi2();
        let (e, _) = realize_general(&p, &Triple::identity(1, vec![Sign::Minus])).unwrap();
        let a = verify_embedding_with(&e, &default_grid(), DEFAULT_TOL, Exec::Sequential).unwrap();
        let b = verify_embedding_with(&e, &default_grid(), DEFAULT_TOL, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mirrored_slices_at_global_beta_use_the_pieces() {
        use crate::exact::{q, qi, AffineMap, Fin};
        use crate::invariant::{check_admissible, recover_triple};
        use crate::pizza::{AbstractPizza, Width};
        let w = Width::Affine(AffineMap::new(q(1, 4), q(3, 4)));
        let p = AbstractPizza::new(
            vec![Fin(q(5, 2)), Fin(qi(1)), Fin(qi(3)), Fin(qi(1))],
            vec![qi(1); 3],
            vec![Width::Affine(AffineMap::identity()), w, w],
        )
        .unwrap();
        let plus = Triple::new(Permutation::identity(2), Permutation::identity(2), vec![Sign::Plus; 2]).unwrap();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let minus = Triple::new(Permutation::identity(2), swap, vec![Sign::Minus; 2]).unwrap();
        for t in [&plus, &minus] {
            assert!(check_admissible(&p, t).unwrap().passes(), "{t}");
            let (e, b) = realize_general(&p, t).unwrap();
            let r = run(&e);
            assert!(equivalent_bundles(&b, r.bundle()));
            // Zone data alone cannot separate the two triples.
            assert!(recover_triple(r.model()).is_err());
        }
    }
}
