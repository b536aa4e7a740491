//! The `spinflip` command-line front end.
//!
//! Every subcommand writes one JSON document to standard output or to `-o PATH`.
//! Exit codes: 0 on success, 2 for invalid input (malformed files, bad flags,
//! incompatible qubit counts), 3 when computed invariants contradict each other
//! at the chosen tolerance.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    classify_acin, classify_three, classify_two, family_label, lu_compare, slocc_compare,
};
use crate::coeff::QubitPartition;
use crate::invariants::invariant_profile;
use crate::io::{parse_operator, parse_state, state_to_json};
use crate::omega::verify_congruence;
use crate::state::{
    acin_state, apply_local, random_state, standard_state, AcinForm, LocalOperator, PureState,
    StandardState,
};
use crate::{Error, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

pub const DEFAULT_MAX_POWER: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "spinflip", version, about = "SLOCC/LU invariants of n-qubit pure states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the output document here instead of standard output.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TolArg {
    /// Relative tolerance for ranks and zero tests.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ranks, singular values, determinants and closed-form invariants.
    Invariants {
        state: PathBuf,
        /// Row qubits, e.g. `1,2` (default `1,2` for n ≥ 3, `1` otherwise).
        #[arg(long)]
        rows: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_POWER)]
        max_power: usize,
        #[command(flatten)]
        tol: TolArg,
    },
    /// SLOCC class of a two- or three-qubit state.
    Classify {
        state: PathBuf,
        #[command(flatten)]
        tol: TolArg,
    },
    /// SLOCC class of an Acin canonical form.
    ClassifyAcin {
        /// `λ0,λ1,λ2,λ3,λ4`
        #[arg(long)]
        acin: String,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Necessary-condition LU comparison of two states.
    CompareLu {
        a: PathBuf,
        b: PathBuf,
        /// Row qubits; repeat for several partitions.
        #[arg(long)]
        rows: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_POWER)]
        max_power: usize,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Necessary-condition SLOCC comparison of two states.
    CompareSlocc {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        tol: TolArg,
    },
    /// LU family label.
    Family {
        state: PathBuf,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Write a state document.
    #[command(group(ArgGroup::new("source").required(true).args(["state", "random", "acin"])))]
    Gen {
        /// Named state: ghz, w, bell, zeros, xi, vartheta, w1, w2.
        #[arg(long)]
        state: Option<String>,
        /// Gaussian random state (needs `--seed`).
        #[arg(long)]
        random: bool,
        /// Acin form `λ0,λ1,λ2,λ3,λ4`.
        #[arg(long)]
        acin: Option<String>,
        #[arg(long)]
        phi: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Apply a local operator to a state.
    Apply { state: PathBuf, operator: PathBuf },
    /// Check the congruence relation of the spin-flipping matrices under an operator.
    VerifyCongruence {
        state: PathBuf,
        operator: PathBuf,
        #[arg(long)]
        rows: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    /// Document printed on standard output (absent when written to `-o`).
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

/// Effective configuration echoed in every report.
#[derive(Debug, Clone, Serialize)]
struct RunConfig {
    rows: Option<Vec<QubitPartition>>,
    max_power: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Input(String),
    Output(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_state(path: &Path) -> CliResult<PureState> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_state(&bytes)?)
}

fn read_operator(path: &Path) -> CliResult<LocalOperator> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_operator(&bytes)?)
}

fn partition_for(rows: Option<&str>, n: usize) -> CliResult<QubitPartition> {
    Ok(match rows {
        Some(r) => QubitPartition::parse(r, n)?,
        None => QubitPartition::default_for(n)?,
    })
}

fn check_tol(tol: f64) -> CliResult<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Input(format!("tolerance must be positive, got {tol}")))
    }
}

fn check_power(p: usize) -> CliResult<usize> {
    if p == 0 {
        Err(CliError::Input("power must be at least 1".into()))
    } else {
        Ok(p)
    }
}

fn report(command: &str, config: RunConfig, payload: Value) -> String {
    let mut doc = json!({
        "tool": "spinflip",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
    });
    if let (Value::Object(base), Value::Object(extra)) = (&mut doc, payload) {
        base.extend(extra);
    }
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn execute(command: Command) -> CliResult<String> {
    match command {
        Command::Invariants {
            state,
            rows,
            max_power,
            tol,
        } => {
            let tol = check_tol(tol.tol)?;
            let max_power = check_power(max_power)?;
            let psi = read_state(&state)?;
            let partition = partition_for(rows.as_deref(), psi.n())?;
            let profile = invariant_profile(&psi, std::slice::from_ref(&partition), max_power, tol)?;
            let mut payload = json!({
                "n": profile.n,
                "rows": partition,
                "ranks": profile.partitions[0].ranks,
                "partitions": profile.partitions,
            });
            let obj = payload.as_object_mut().expect("object");
            if let Some(c) = profile.concurrence {
                obj.insert("concurrence".into(), c.into());
            }
            if let Some(odd) = &profile.odd {
                obj.insert("ntangle".into(), odd.ntangle.into());
                obj.insert("delta".into(), odd.delta.into());
                obj.insert("odd".into(), to_value(odd));
            }
            if let Some(s) = profile.s {
                obj.insert("s".into(), s.into());
            }
            let config = RunConfig {
                rows: Some(vec![partition]),
                max_power: Some(max_power),
                tol: Some(tol),
                seed: None,
            };
            Ok(report("invariants", config, payload))
        }
        Command::Classify { state, tol } => {
            let tol = check_tol(tol.tol)?;
            let psi = read_state(&state)?;
            let partition = QubitPartition::default_for(psi.n()).ok();
            let payload = match psi.n() {
                2 => json!({ "n": 2, "class": classify_two(&psi, tol)? }),
                3 => {
                    let c = classify_three(&psi, tol)?;
                    json!({
                        "n": 3,
                        "class": c.class,
                        "ranks": c.ranks,
                        "local_ranks": c.local_ranks,
                    })
                }
                n => {
                    return Err(CliError::Lib(Error::WrongQubitCount { expected: "2 or 3", n }))
                }
            };
            let config = RunConfig {
                rows: partition.map(|p| vec![p]),
                max_power: Some(if psi.n() == 2 { 1 } else { 3 }),
                tol: Some(tol),
                seed: None,
            };
            Ok(report("classify", config, payload))
        }
        Command::ClassifyAcin { acin, phi, tol } => {
            let tol = check_tol(tol.tol)?;
            let form = AcinForm::parse(&acin, phi)?;
            let c = classify_acin(&form, tol)?;
            let payload = json!({
                "lambdas": form.lambdas(),
                "phi": form.phi(),
                "class": c.class,
                "ranks": c.ranks,
                "tree_ranks": c.tree_ranks,
                "s": c.s,
            });
            let config = RunConfig {
                rows: Some(vec![QubitPartition::new(3, vec![1, 2])?]),
                max_power: Some(3),
                tol: Some(tol),
                seed: None,
            };
            Ok(report("classify-acin", config, payload))
        }
        Command::CompareLu {
            a,
            b,
            rows,
            max_power,
            tol,
        } => {
            let tol = check_tol(tol.tol)?;
            let max_power = check_power(max_power)?;
            let (psi, phi) = (read_state(&a)?, read_state(&b)?);
            if psi.n() != phi.n() {
                return Err(Error::DimensionMismatch(psi.n(), phi.n()).into());
            }
            let partitions = if rows.is_empty() {
                vec![QubitPartition::default_for(psi.n())?]
            } else {
                rows.iter()
                    .map(|r| partition_for(Some(r), psi.n()))
                    .collect::<CliResult<Vec<_>>>()?
            };
            let verdict = lu_compare(&psi, &phi, &partitions, max_power, tol)?;
            let config = RunConfig {
                rows: Some(partitions),
                max_power: Some(max_power),
                tol: Some(tol),
                seed: None,
            };
            Ok(report("compare-lu", config, to_value(&verdict)))
        }
        Command::CompareSlocc { a, b, tol } => {
            let tol = check_tol(tol.tol)?;
            let (psi, phi) = (read_state(&a)?, read_state(&b)?);
            let verdict = slocc_compare(&psi, &phi, tol)?;
            let config = RunConfig {
                rows: QubitPartition::default_for(psi.n()).ok().map(|p| vec![p]),
                max_power: Some(DEFAULT_MAX_POWER),
                tol: Some(tol),
                seed: None,
            };
            Ok(report("compare-slocc", config, to_value(&verdict)))
        }
        Command::Family { state, tol } => {
            let tol = check_tol(tol.tol)?;
            let psi = read_state(&state)?;
            let label = family_label(&psi, tol)?;
            let config = RunConfig {
                rows: None,
                max_power: None,
                tol: Some(tol),
                seed: None,
            };
            Ok(report("family", config, json!({ "n": psi.n(), "family": label })))
        }
        Command::Gen {
            state,
            random,
            acin,
            phi,
            n,
            seed,
        } => {
            let need_n = || n.ok_or_else(|| CliError::Input("--n is required".into()));
            let psi = if let Some(name) = state {
                standard_state(name.parse::<StandardState>()?, need_n()?)?
            } else if random {
                let seed = seed.ok_or_else(|| CliError::Input("--random needs --seed".into()))?;
                random_state(need_n()?, seed)?
            } else {
                let lambdas = acin.expect("clap enforces one source");
                if n.is_some_and(|n| n != 3) {
                    return Err(CliError::Input("Acin forms have n = 3".into()));
                }
                acin_state(&AcinForm::parse(&lambdas, phi.unwrap_or(0.0))?)
            };
            Ok(state_to_json(&psi))
        }
        Command::Apply { state, operator } => {
            let psi = read_state(&state)?;
            let op = read_operator(&operator)?;
            Ok(state_to_json(&apply_local(&psi, &op)?))
        }
        Command::VerifyCongruence {
            state,
            operator,
            rows,
            power,
        } => {
            let power = check_power(power)?;
            let psi = read_state(&state)?;
            let op = read_operator(&operator)?;
            let partition = partition_for(rows.as_deref(), psi.n())?;
            let rep = verify_congruence(&psi, &op, &partition, power)?;
            let payload = json!({
                "n": psi.n(),
                "kind": op.kind(),
                "power": power,
                "alpha": [rep.alpha.re, rep.alpha.im],
                "beta": [rep.beta.re, rep.beta.im],
                "residual": rep.residual,
                "residual_without_prefactor": rep.residual_without_prefactor,
            });
            let config = RunConfig {
                rows: Some(vec![partition]),
                max_power: Some(power),
                tol: None,
                seed: None,
            };
            Ok(report("verify-congruence", config, payload))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: Some(text), stderr: None }
            } else {
                Outcome { code, stdout: None, stderr: Some(text) }
            };
        }
    };
    let result = execute(cli.command).and_then(|mut doc| {
        doc.push('\n');
        match &cli.output {
            Some(path) => fs::write(path, &doc)
                .map(|_| None)
                .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display()))),
            None => Ok(Some(doc)),
        }
    });
    match result {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: None,
        },
        Err(err) => {
            let (code, msg) = match err {
                CliError::Lib(e) if e.is_inconsistency() => (EXIT_INCONSISTENT, e.to_string()),
                CliError::Lib(e) => (EXIT_INVALID, e.to_string()),
                CliError::Input(m) => (EXIT_INVALID, m),
                CliError::Output(m) => (EXIT_FAILURE, m),
            };
            Outcome {
                code,
                stdout: None,
                stderr: Some(format!("error: {msg}\n")),
            }
        }
    }
}
