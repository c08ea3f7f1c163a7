//! `kout` command-line front end.
//!
//! Exit codes: 0 on success, 2 on invalid parameters or unreadable inputs,
//! 1 on runtime failures. Diagnostics are one line on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kout_core::deletion::DeletionAmount;
use kout_core::montecarlo::{run_sweep, RunOptions};
use kout_core::oracle::{self, Predicate};
use kout_core::thresholds::{self, DeletionLevel, Goal, ThresholdQuery};
use kout_core::{
    components, delete_uniform, sample_er, sample_kout, DeletionSpec, Error, ExperimentConfig,
    GraphFile, Real, Seed,
};

#[derive(Debug, Parser)]
#[command(
    name = "kout",
    version,
    about = "Random K-out graphs under random node deletion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a graph and write it as JSON.
    Sample(SampleArgs),
    /// Print the component summary of a graph file, optionally after deleting nodes.
    Analyze(AnalyzeArgs),
    /// Evaluate a threshold and recommend an integer K.
    Threshold(ThresholdArgs),
    /// Run a Monte Carlo sweep described by a JSON config and write CSV.
    Sweep(SweepArgs),
    /// Union bound on the disconnection probability.
    Bound(BoundArgs),
    /// Exact probability by exhaustive enumeration (tiny instances only).
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Kout,
    Er,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "p")]
    k: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, conflicts_with = "delete_frac", requires = "del_seed")]
    delete: Option<usize>,
    #[arg(long, requires = "del_seed")]
    delete_frac: Option<f64>,
    #[arg(long)]
    del_seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GoalArg {
    Connectivity,
    Giant,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[arg(long, value_enum)]
    goal: GoalArg,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    gamma: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long, default_value_t = 0)]
    slack: u32,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Defaults to the available parallelism; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    gamma: usize,
    /// Include the per-r summands.
    #[arg(long)]
    terms: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    gamma: usize,
    /// Compute P(outside_giant < lambda) instead of P(connected).
    #[arg(long)]
    lambda: Option<usize>,
}

/// A failed command: exit code plus one-line message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_usage() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments").trim();
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    let result = match cli.command {
        Command::Sample(a) => sample(a),
        Command::Analyze(a) => analyze(a, stdout),
        Command::Threshold(a) => threshold(a, stdout),
        Command::Sweep(a) => sweep(a, stderr),
        Command::Bound(a) => bound(a, stdout),
        Command::Oracle(a) => run_oracle(a, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message.replace('\n', " "));
            f.code
        }
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::runtime(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure::runtime(e.to_string()))
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &PathBuf, contents: &[u8]) -> CmdResult {
    std::fs::write(path, contents)
        .map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))
}

fn sample(a: SampleArgs) -> CmdResult {
    let seed = Seed(a.seed);
    let file = match (a.model, a.k, a.p) {
        (ModelArg::Kout, Some(k), None) => GraphFile::from_kout(&sample_kout(a.n, k, seed)?, seed),
        (ModelArg::Er, None, Some(p)) => GraphFile::from_er(&sample_er(a.n, p, seed)?),
        (ModelArg::Kout, _, _) => {
            return Err(Failure::usage("--model kout requires --k (and no --p)"))
        }
        (ModelArg::Er, _, _) => return Err(Failure::usage("--model er requires --p (and no --k)")),
    };
    write_output(&a.out, file.to_json()?.as_bytes())
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> CmdResult {
    let text = read_input(&a.input)?;
    let graph = GraphFile::from_json(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", a.input.display())))?
        .into_graph()?;
    let amount = match (a.delete, a.delete_frac) {
        (Some(g), None) => Some(DeletionAmount::Count(g)),
        (None, Some(f)) => Some(DeletionAmount::Fraction(f)),
        _ => None,
    };
    let summary = match amount {
        Some(amount) => {
            let spec = DeletionSpec {
                amount,
                seed: Seed(a.del_seed.unwrap_or_default()),
            };
            components(&delete_uniform(&graph, &spec)?)
        }
        None => components(&graph),
    };
    print_json(out, &summary)
}

#[derive(Serialize)]
struct ThresholdReport {
    goal: Goal,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<usize>,
    slack: u32,
    threshold: Real,
    recommended_k: u32,
    regime: &'static str,
    regime_description: &'static str,
}

fn threshold(a: ThresholdArgs, out: &mut dyn Write) -> CmdResult {
    let goal = match a.goal {
        GoalArg::Connectivity => Goal::Connectivity,
        GoalArg::Giant => Goal::Giant,
    };
    let deletion = match (a.gamma, a.alpha) {
        (Some(g), None) => DeletionLevel::Count(g),
        (None, Some(alpha)) => DeletionLevel::Fraction(alpha),
        _ => {
            return Err(Failure::usage(
                "exactly one of --gamma and --alpha is required",
            ))
        }
    };
    let query = ThresholdQuery::<Real> {
        goal,
        n: a.n,
        deletion,
        lambda: a.lambda,
        slack: a.slack,
    };
    let outcome = thresholds::evaluate(&query)?;
    print_json(
        out,
        &ThresholdReport {
            goal,
            n: a.n,
            gamma: a.gamma,
            alpha: a.alpha,
            lambda: a.lambda,
            slack: a.slack,
            threshold: outcome.threshold,
            recommended_k: outcome.recommended_k,
            regime: outcome.regime.name(),
            regime_description: outcome.regime.description(),
        },
    )
}

fn sweep(a: SweepArgs, err: &mut dyn Write) -> CmdResult {
    let text = read_input(&a.config)?;
    let config = ExperimentConfig::from_json(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", a.config.display())))?;
    let mut log = |row: &kout_core::SweepRow| {
        let _ = writeln!(
            err,
            "cell model={} n={} k={} gamma={} trials={} prob_connected={} max_outside_giant={}",
            row.model,
            row.n,
            row.k,
            row.gamma,
            row.trials,
            row.prob_connected,
            row.max_outside_giant
        );
    };
    let result = run_sweep(
        &config,
        RunOptions {
            workers: a.workers,
            on_cell: Some(&mut log),
        },
    )?;
    write_output(&a.out, result.to_csv_string()?.as_bytes())
}

fn bound(a: BoundArgs, out: &mut dyn Write) -> CmdResult {
    let report = thresholds::union_bound_pz::<Real>(a.n, a.k, a.gamma, a.terms)?;
    print_json(out, &report)
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    k: usize,
    gamma: usize,
    predicate: Predicate,
    exact: String,
    decimal: f64,
}

fn run_oracle(a: OracleArgs, out: &mut dyn Write) -> CmdResult {
    let predicate = match a.lambda {
        Some(l) => Predicate::OutsideGiantLt(l),
        None => Predicate::Connected,
    };
    let p = oracle::exact_probability(a.n, a.k, a.gamma, predicate)?;
    print_json(
        out,
        &OracleReport {
            n: a.n,
            k: a.k,
            gamma: a.gamma,
            predicate,
            exact: p.to_string(),
            decimal: oracle::to_f64(&p),
        },
    )
}
