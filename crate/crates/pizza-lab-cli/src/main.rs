//! `pizza-lab`: reduce, classify, realize and verify from the command line.

mod error;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use serde::{Deserialize, Serialize};

use pizza_lab::blocks::Permutation;
use pizza_lab::exact::{parse_q, ExtRational, Q};
use pizza_lab::invariant::{bundle_difference, recover_triple, InvariantBundle, InvariantError, NormalPairModel, Triple};
use pizza_lab::par::Exec;
use pizza_lab::pizza::{from_transverse_profile, AbstractPizza};
use pizza_lab::realization::{realize_general, realize_transverse, PairEmbedding, RealizationError};
use pizza_lab::sweep::{self, Coverage, Tally};
use pizza_lab::verify::{self, default_grid, VerifyError, DEFAULT_TOL};

use error::CliError;
use io::{check_writable, emit, read_json, to_json, write_atomic};

const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser)]
#[command(name = "pizza-lab", version, about = "Pizza invariants: reduce, realize, verify and sweep")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimize a pizza; prints the merges applied.
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a pizza's axioms and report minimality.
    Validate { input: PathBuf },
    /// Realize `{"pizza", "triple"}` as an embedded normal pair.
    Realize {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Realize `{"betabar", "qbar", "pi"}` as a totally transverse pair.
    RealizeTransverse {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Read the invariant bundle off a normal-pair model.
    Invariant {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare two bundles; exit 1 when inequivalent.
    Equiv { a: PathBuf, b: PathBuf },
    /// Oracle report for an embedding; exit 4 when any check fails.
    Verify {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Comma-separated sample points for the slope check.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write the tangency dendrogram here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Seeded or exhaustive round-trip sweeps.
    Sweep {
        kind: SweepKind,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated exponent menu.
        #[arg(long, value_delimiter = ',', default_value = "1,3/2,2,5/2,3")]
        menu: Vec<String>,
        /// Instances for random sweeps, profiles per length when sampling.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest profile length / slice count for enumerated sweeps.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Sample transverse profiles above this length.
        #[arg(long)]
        sample_above: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        sequential: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Transverse,
    General,
    Function,
    Confluence,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizeInput {
    pizza: AbstractPizza,
    triple: Triple,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TransverseInput {
    betabar: Vec<String>,
    qbar: Vec<String>,
    /// 0-based image of each arc.
    pi: Vec<usize>,
}

#[derive(Serialize)]
struct SweepOutput {
    kind: &'static str,
    seed: u64,
    instances: usize,
    passes: bool,
    tally: Tally,
}

fn field<T>(path: &Path, name: String, r: Result<T, impl std::fmt::Display>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Parse { path: path.into(), msg: format!("{name}: {e}") })
}

fn parse_menu(menu: &[String]) -> Result<Vec<Q>, CliError> {
    menu.iter()
        .map(|s| parse_q(s).map_err(|_| CliError::Usage(format!("--menu: invalid rational {s:?}"))))
        .collect()
}

fn realization_error(e: RealizationError) -> CliError {
    match e {
        RealizationError::Admissibility(m) => CliError::Admissibility(m),
        RealizationError::Invariant(e @ InvariantError::NotAllowable(_)) => CliError::Admissibility(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    }
}

fn verify_error(e: VerifyError) -> CliError {
    match e {
        VerifyError::Embedding(x) => CliError::Usage(format!("embedding: {x}")),
        other => CliError::Verification(other.to_string()),
    }
}

fn write_realization(out_dir: &Path, e: &PairEmbedding, b: &InvariantBundle, dot: bool) -> Result<(), CliError> {
    write_atomic(&out_dir.join("embedding.json"), &to_json(e))?;
    write_atomic(&out_dir.join("bundle.json"), &to_json(b))?;
    if dot {
        let table = verify::oracle_tord_table(e).map_err(|x| CliError::Invalid(x.to_string()))?;
        write_atomic(&out_dir.join("tord.dot"), &table.dendrogram_dot(&e.names()))?;
    }
    println!("varpi {}", b.varpi);
    Ok(())
}

fn require_dir(d: &Path) -> Result<(), CliError> {
    if d.is_dir() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("output directory {} does not exist", d.display())))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Reduce { input, out } => {
            if let Some(o) = &out {
                check_writable(o)?;
            }
            let p: AbstractPizza = read_json(&input)?;
            if let Some(v) = p.validate().first() {
                return Err(CliError::Invalid(v.to_string()));
            }
            let (m, log) = p.minimize_logged();
            for (l, kind) in &log {
                println!("merge slices {l},{} by ({})", l + 1, format!("{kind:?}").to_lowercase());
            }
            info!("{} merges, {} → {} slices", log.len(), p.p(), m.p());
            match out {
                Some(o) => write_atomic(&o, &to_json(&m)),
                None => emit(None, &m),
            }
        }
        Cmd::Validate { input } => {
            let p: AbstractPizza = read_json(&input)?;
            let v = p.validate();
            for x in &v {
                println!("violation: {x}");
            }
            if !v.is_empty() {
                return Err(CliError::Invalid(format!("{} violations", v.len())));
            }
            match p.first_reduction() {
                None => println!("valid, minimal"),
                Some((l, kind)) => println!("valid, reducible at {l} by ({})", format!("{kind:?}").to_lowercase()),
            }
            Ok(())
        }
        Cmd::Realize { input, out_dir, dot } => {
            require_dir(&out_dir)?;
            let r: RealizeInput = read_json(&input)?;
            let (e, b) = realize_general(&r.pizza, &r.triple).map_err(realization_error)?;
            write_realization(&out_dir, &e, &b, dot)
        }
        Cmd::RealizeTransverse { input, out_dir, dot } => {
            require_dir(&out_dir)?;
            let r: TransverseInput = read_json(&input)?;
            let betabar = r
                .betabar
                .iter()
                .enumerate()
                .map(|(i, s)| field(&input, format!("betabar[{i}]"), parse_q(s)))
                .collect::<Result<Vec<_>, _>>()?;
            let qbar = r
                .qbar
                .iter()
                .enumerate()
                .map(|(i, s)| field(&input, format!("qbar[{i}]"), s.parse::<ExtRational>()))
                .collect::<Result<Vec<_>, _>>()?;
            let pi = field(&input, "pi".into(), Permutation::new(r.pi))?;
            let p = from_transverse_profile(&betabar, &qbar).map_err(|e| CliError::Invalid(e.to_string()))?;
            let (e, b) = realize_transverse(&p, &pi).map_err(realization_error)?;
            write_realization(&out_dir, &e, &b, dot)
        }
        Cmd::Invariant { input, out } => {
            if let Some(o) = &out {
                check_writable(o)?;
            }
            let m: NormalPairModel = read_json(&input)?;
            if let Some(v) = m.validate().first() {
                return Err(CliError::Invalid(v.clone()));
            }
            let t = recover_triple(&m).map_err(|e| CliError::Invalid(e.to_string()))?;
            let b = InvariantBundle::new(m.lambda, m.lambda_prime, t).map_err(|e| CliError::Invalid(e.to_string()))?;
            emit(out.as_deref(), &b)
        }
        Cmd::Equiv { a, b } => {
            let x: InvariantBundle = read_json(&a)?;
            let y: InvariantBundle = read_json(&b)?;
            match bundle_difference(&x, &y) {
                None => {
                    println!("equivalent");
                    Ok(())
                }
                Some(d) => {
                    println!("inequivalent: {d}");
                    Err(CliError::Inequivalent(d))
                }
            }
        }
        Cmd::Verify { input, out, grid, tol, dot } => {
            for p in out.iter().chain(&dot) {
                check_writable(p)?;
            }
            let e: PairEmbedding = read_json(&input)?;
            let grid = grid.unwrap_or_else(default_grid);
            let r = verify::verify_embedding(&e, &grid, tol).map_err(verify_error)?;
            if let Some(d) = &dot {
                write_atomic(d, &r.table().dendrogram_dot(&r.names))?;
            }
            emit(out.as_deref(), &r)?;
            for c in &r.checks {
                debug!("{} {}", c.name, if c.passes { "ok" } else { &c.detail });
            }
            match r.first_failure() {
                None => {
                    eprintln!("all {} checks pass", r.checks.len());
                    Ok(())
                }
                Some(c) => Err(CliError::Verification(format!("{}: {}", c.name, c.detail))),
            }
        }
        Cmd::Sweep { kind, seed, menu, count, max_n, sample_above, grid, tol, sequential, out } => {
            if let Some(o) = &out {
                check_writable(o)?;
            }
            let menu = parse_menu(&menu)?;
            if menu.is_empty() {
                return Err(CliError::Usage("--menu is empty".into()));
            }
            let exec = if sequential { Exec::Sequential } else { Exec::default() };
            let grid = grid.unwrap_or_else(default_grid);
            let (name, n, tally) = match kind {
                SweepKind::Transverse => {
                    let mut all = Tally::default();
                    let mut n = 0;
                    for len in 1..=max_n {
                        let coverage = match sample_above {
                            Some(s) if len > s => Coverage::Sample { count, seed },
                            _ => Coverage::All,
                        };
                        let (k, t) = sweep::transverse_sweep(&menu, len, coverage, exec);
                        info!("length {len}: {k} profiles");
                        n += k;
                        all.merge(t);
                    }
                    ("transverse", n, all)
                }
                SweepKind::General => {
                    let inst = sweep::general_instances(seed, count, &menu, 3);
                    ("general", inst.len(), sweep::general_sweep(&inst, exec))
                }
                SweepKind::Function => {
                    let ps = sweep::random_minimal_pizzas(seed, count, &menu, 6);
                    ("function", ps.len(), sweep::function_sweep(&ps, &grid, tol, exec))
                }
                SweepKind::Confluence => {
                    let (n, t) = sweep::confluence_sweep(&menu, max_n, exec);
                    ("confluence", n, t)
                }
            };
            let passes = tally.passes();
            let report = SweepOutput { kind: name, seed, instances: n, passes, tally };
            emit(out.as_deref(), &report)?;
            if passes {
                Ok(())
            } else {
                Err(CliError::Verification(report.tally.failures.first().cloned().unwrap_or_default()))
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PIZZA_LAB_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
