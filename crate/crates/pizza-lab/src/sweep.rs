//! Round-trip and property sweeps over enumerated or seeded-random inputs.
//!
//! Every sweep returns a [`Tally`]: named counters of passed and failed
//! checks plus the first few failure messages. Units of work are independent
//! and are fanned out through [`Exec`].

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocks::{check_block_inequalities, permutations, Permutation};
use crate::exact::{ExtRational, Fin, Q};
use crate::invariant::{check_admissible, equivalent_bundles, InvariantBundle, Sign, Triple};
use crate::par::Exec;
use crate::pizza::{
    build_twin_pre_pizza, for_each_pizza_with_orders, from_transverse_profile, order_sequences, random_pizza,
    twin_count_formula, AbstractPizza,
};
use crate::realization::{realize_function, realize_general, realize_transverse, sigma_from_extended, PairEmbedding};
use crate::verify::{check_cne, function_numeric_check, oracle_tord_table, recover, verify_embedding};

/// Failure messages kept per tally.
pub const KEPT_FAILURES: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counter {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub counters: BTreeMap<&'static str, Counter>,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let c = self.counters.entry(name).or_default();
        if ok {
            c.passed += 1;
        } else {
            c.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("{name}: {}", detail()));
            }
        }
    }

    /// Counts a unit that was excluded from the sweep (not a failure).
    pub fn skip(&mut self, name: &'static str) {
        self.counters.entry(name).or_default().passed += 1;
    }

    pub fn merge(&mut self, other: Tally) {
        for (k, c) in other.counters {
            let e = self.counters.entry(k).or_default();
            e.passed += c.passed;
            e.failed += c.failed;
        }
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn get(&self, name: &str) -> Counter {
        self.counters.get(name).cloned().unwrap_or_default()
    }

    pub fn failed(&self) -> usize {
        self.counters.iter().filter(|(k, _)| !k.starts_with("skip")).map(|(_, c)| c.failed).sum()
    }

    pub fn passes(&self) -> bool {
        self.failed() == 0
    }

    fn collect(parts: Vec<Tally>) -> Tally {
        let mut t = Tally::default();
        for p in parts {
            t.merge(p);
        }
        t
    }
}

/// Count formula and table ultrametricity for one minimal pizza.
fn pizza_checks(t: &mut Tally, p: &AbstractPizza) {
    match build_twin_pre_pizza(p) {
        Ok(tp) => {
            let f = twin_count_formula(p);
            t.record("count_formula", f.value() == tp.len(), || format!("{p:?}: formula {f:?} vs 𝒩 = {}", tp.len()));
            let um = tp.tord_table().ultrametric_violations();
            t.record("ultrametric_pizza", um.is_empty(), || format!("{p:?}: {:?}", um.first()));
        }
        Err(e) => t.record("twin_pre_pizza", false, || format!("{p:?}: {e}")),
    }
}

/// Ultrametricity of the oracle table of an embedding.
fn embedding_table_checks(t: &mut Tally, e: &PairEmbedding) {
    match oracle_tord_table(e) {
        Ok(tab) => {
            let um = tab.ultrametric_violations();
            t.record("ultrametric_oracle", um.is_empty(), || format!("{:?}", um.first()));
        }
        Err(err) => t.record("ultrametric_oracle", false, || err.to_string()),
    }
}

/// Supporting profiles `(β̄, q̄)` of length `n` over `menu` with
/// `q̄_j > max(β̄_j, β̄_{j+1})` inside and `q̄ ≥ β̄` at the ends.
pub fn transverse_profiles(menu: &[Q], n: usize) -> Vec<(Vec<Q>, Vec<ExtRational>)> {
    let mut out = Vec::new();
    for betas in order_sequences(menu, n - 1) {
        let mut qs: Vec<Vec<Q>> = vec![Vec::new()];
        for j in 0..=n {
            let lo = match j {
                0 => betas[0],
                _ if j == n => betas[n - 1],
                _ => betas[j - 1].max(betas[j]),
            };
            let ok = |x: Q| if j == 0 || j == n { x >= lo } else { x > lo };
            qs = qs
                .into_iter()
                .flat_map(|s| {
                    menu.iter().filter(|&&x| ok(x)).map(move |&x| {
                        let mut t = s.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out.extend(qs.into_iter().map(|q| (betas.clone(), q.into_iter().map(Fin).collect())));
    }
    out
}

/// Permutations of `0..n` fixing `0` and `n − 1`.
pub fn end_fixing_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let inner = n.saturating_sub(2);
    permutations(inner).map(move |w| {
        let mut v = Vec::with_capacity(n);
        v.push(0);
        v.extend(w.images().iter().map(|x| x + 1));
        if n > 1 {
            v.push(n - 1);
        }
        Permutation::new(v).expect("permutation")
    })
}

/// Totally transverse round trip for one profile: every end-fixing `π`
/// passing the block inequalities is realized, the table is recovered, and
/// `σ` and the `λ′` normal embedding are checked.
pub fn transverse_unit(betabar: &[Q], qbar: &[ExtRational]) -> Tally {
    let mut t = Tally::default();
    let p = match from_transverse_profile(betabar, qbar) {
        Ok(p) if p.is_minimal() => p,
        _ => {
            t.skip("skip_profile");
            return t;
        }
    };
    pizza_checks(&mut t, &p);
    let Ok(tp) = build_twin_pre_pizza(&p) else { return t };
    let table = tp.tord_table();
    for pi in end_fixing_permutations(tp.len()) {
        if !check_block_inequalities(&pi, &table).map(|v| v.is_empty()).unwrap_or(false) {
            continue;
        }
        let realized = realize_transverse(&p, &pi);
        t.record("transverse_realize", realized.is_ok(), || {
            format!("{betabar:?}/{qbar:?} π = {pi}: {}", realized.as_ref().err().map(|e| e.to_string()).unwrap_or_default())
        });
        let Ok((e, _)) = realized else { continue };
        let want = sigma_from_extended(&tp, &pi).expect("π checked above");
        let outcome = oracle_tord_table(&e).map_err(|x| x.to_string()).and_then(|tab| {
            let rec = recover(&e, &tab).map_err(|x| x.to_string())?;
            let n = e.n();
            let lp: Vec<usize> = e.lambda_prime_positions().into_iter().map(|i| n + i).collect();
            Ok((rec, check_cne(&tab, &lp).passes, tab.is_ultrametric()))
        });
        t.record("transverse_recover", outcome.is_ok(), || {
            format!("{betabar:?}/{qbar:?} π = {pi}: {}", outcome.as_ref().err().cloned().unwrap_or_default())
        });
        if let Ok((rec, cne, um)) = outcome {
            t.record("transverse_sigma", rec.bundle.sigma() == &want, || {
                format!("π = {pi}: σ {:?} vs {:?}", rec.bundle.sigma().one_based(), want.one_based())
            });
            t.record("transverse_cne", cne, || format!("{betabar:?}/{qbar:?} π = {pi}"));
            t.record("ultrametric_oracle", um, || format!("π = {pi}"));
        }
    }
    t
}

/// How many profiles of each length a transverse sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    All,
    /// A seeded uniform sample of at most this many profiles.
    Sample { count: usize, seed: u64 },
}

/// Runs [`transverse_unit`] over all profiles of one length.
pub fn transverse_sweep(menu: &[Q], n: usize, coverage: Coverage, exec: Exec) -> (usize, Tally) {
    let mut profiles = transverse_profiles(menu, n);
    if let Coverage::Sample { count, seed } = coverage {
        if profiles.len() > count {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
            profiles.shuffle(&mut rng);
            profiles.truncate(count);
        }
    }
    let parts = exec.map(&profiles, |(b, q)| transverse_unit(b, q));
    (profiles.len(), Tally::collect(parts))
}

/// All triples `(σ, υ, s)` of the right shape that are admissible for `p`.
pub fn admissible_triples(p: &AbstractPizza) -> Vec<Triple> {
    let (m, l) = (p.maximum_zones().len(), p.coherent_slices().len());
    let mut out = Vec::new();
    for sigma in permutations(m) {
        for upsilon in permutations(l) {
            for bits in 0..1u32 << l {
                let sign = (0..l).map(|k| if bits >> k & 1 == 0 { Sign::Plus } else { Sign::Minus }).collect();
                let t = Triple::new(sigma.clone(), upsilon.clone(), sign).expect("shape");
                if check_admissible(p, &t).map(|r| r.passes()).unwrap_or(false) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn realize_and_recover(p: &AbstractPizza, t: &Triple) -> Result<(InvariantBundle, InvariantBundle, PairEmbedding), String> {
    let (e, want) = realize_general(p, t).map_err(|x| x.to_string())?;
    let report = verify_embedding(&e, &crate::verify::default_grid(), crate::verify::DEFAULT_TOL).map_err(|x| x.to_string())?;
    if let Some(c) = report.first_failure() {
        return Err(format!("{}: {}", c.name, c.detail));
    }
    Ok((want, report.recovery.bundle, e))
}

/// General round trip for one pizza and triple, plus every `σ`
/// transposition that stays admissible.
pub fn general_unit(p: &AbstractPizza, t: &Triple) -> Tally {
    let mut out = Tally::default();
    pizza_checks(&mut out, p);
    match realize_and_recover(p, t) {
        Ok((want, got, e)) => {
            out.record("general_round_trip", equivalent_bundles(&want, &got), || {
                format!("{p:?} {t}: {:?}", crate::invariant::bundle_difference(&want, &got))
            });
            embedding_table_checks(&mut out, &e);
            let m = t.sigma.len();
            for i in 0..m {
                for j in i + 1..m {
                    let mt = Triple { sigma: t.sigma.transposed(i, j), ..t.clone() };
                    if !check_admissible(p, &mt).map(|r| r.passes()).unwrap_or(false) {
                        continue;
                    }
                    match realize_and_recover(p, &mt) {
                        Ok((_, other, _)) => out.record("general_mutation", !equivalent_bundles(&want, &other), || {
                            format!("{p:?}: transposing σ at ({i}, {j}) kept the invariant")
                        }),
                        Err(err) => out.record("general_mutation", false, || format!("{p:?} {mt}: {err}")),
                    }
                }
            }
        }
        Err(err) => out.record("general_round_trip", false, || format!("{p:?} {t}: {err}")),
    }
    out
}

/// `count` random minimal pizzas with at most `max_l` coherent slices and
/// an admissible triple, each drawn with one random admissible triple.
pub fn general_instances(seed: u64, count: usize, menu: &[Q], max_l: usize) -> Vec<(AbstractPizza, Triple)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let slices = rng.gen_range(1..=5);
        let p = random_pizza(&mut rng, menu, slices).minimize();
        if p.coherent_slices().len() > max_l || p.maximum_zones().len() > 4 {
            continue;
        }
        let ts = admissible_triples(&p);
        if let Some(t) = ts.choose(&mut rng) {
            out.push((p, t.clone()));
        }
    }
    out
}

pub fn general_sweep(instances: &[(AbstractPizza, Triple)], exec: Exec) -> Tally {
    Tally::collect(exec.map(instances, |(p, t)| general_unit(p, t)))
}

/// Exact boundary orders and sampled slopes of one function realization.
pub fn function_unit(p: &AbstractPizza, grid: &[f64], tol: f64) -> Tally {
    let mut t = Tally::default();
    pizza_checks(&mut t, p);
    match realize_function(p) {
        Ok(r) => {
            let b = r.boundary_mismatches();
            t.record("function_exact", b.is_empty(), || format!("{p:?}: {}", b.join("; ")));
            let d = function_numeric_check(&r, grid, tol);
            t.record("function_numeric", d.is_empty(), || format!("{p:?}: {:?}", d.first()));
        }
        Err(e) => t.record("function_exact", false, || format!("{p:?}: {e}")),
    }
    t
}

/// `count` random minimal pizzas with up to `max_p` slices before reduction.
pub fn random_minimal_pizzas(seed: u64, count: usize, menu: &[Q], max_p: usize) -> Vec<AbstractPizza> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(1..=max_p);
            random_pizza(&mut rng, menu, p).minimize()
        })
        .collect()
}

pub fn function_sweep(pizzas: &[AbstractPizza], grid: &[f64], tol: f64, exec: Exec) -> Tally {
    Tally::collect(exec.map(pizzas, |p| function_unit(p, grid, tol)))
}

/// Minimal pizzas never keep a point slice whose neighbouring zone widths
/// bottom out at its `β` (such a slice would still be reducible).
pub fn lemma_violations(p: &AbstractPizza) -> Vec<usize> {
    (1..=p.p())
        .filter(|&l| p.q(l - 1) == p.q(l) && p.nu(l - 1).min(p.nu(l)) == Fin(p.beta(l)))
        .collect()
}

/// All reduction orders of one pizza agree, and the result obeys the lemma.
pub fn confluence_unit(p: &AbstractPizza) -> Tally {
    let mut t = Tally::default();
    let finals = p.all_minimizations();
    let m = p.minimize();
    t.record("confluence", finals.iter().all(|f| f.equivalent(&m)), || {
        format!("{p:?}: {} distinct minimal forms", finals.len())
    });
    let bad = lemma_violations(&m);
    t.record("minimal_lemma", bad.is_empty(), || format!("{m:?}: slices {bad:?}"));
    pizza_checks(&mut t, &m);
    t
}

/// Every valid pizza with `1..=max_p` slices over `menu`; returns the number
/// of pizzas visited.
pub fn confluence_sweep(menu: &[Q], max_p: usize, exec: Exec) -> (usize, Tally) {
    let seqs: Vec<Vec<Q>> = (1..=max_p).flat_map(|p| order_sequences(menu, p)).collect();
    let parts = exec.map(&seqs, |q| {
        let mut t = Tally::default();
        let mut n = 0usize;
        for_each_pizza_with_orders(q, menu, |p| {
            n += 1;
            if p.is_valid() {
                t.merge(confluence_unit(&p));
            } else {
                t.skip("skip_invalid");
            }
        });
        (n, t)
    });
    let total = parts.iter().map(|x| x.0).sum();
    (total, Tally::collect(parts.into_iter().map(|x| x.1).collect()))
}
