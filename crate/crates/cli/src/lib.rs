//! Command-line front end for `qkostant`.
//!
//! Every command prints a human-readable table and, with `--report PATH`,
//! writes a JSON report. Reports carry no timings unless `--timing` is
//! given, so repeated runs with the same arguments are byte-identical.

mod commands;
mod table;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub use commands::dispatch;

/// Default seed for every randomized command.
pub const DEFAULT_SEED: u64 = qkostant::kostant::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "qkostant", version, about = "Quantum matrix algebra toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    /// Worker thread cap; falls back to QKOSTANT_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Record wall-clock time in the report (reports then differ between runs).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Normalize(NormalizeArgs),
    /// The relation table of a mutation system.
    Relations(SystemArgs),
    /// Quantum determinant or a quantum minor.
    Qdet(QdetArgs),
    /// Sums of principal quantum minors.
    Delta(DeltaArgs),
    /// Invariance under the adjoint coactions and the antipode axioms.
    Invariants(InvariantsArgs),
    /// Confluence of all overlaps.
    PbwCheck(PbwArgs),
    /// The filtration tower S_1 -> ... -> S_n.
    TowerCheck(TowerArgs),
    /// Hilbert series of A, I and H.
    Hilbert(DegreeArgs),
    /// Certify that A is free over the invariant subalgebra.
    KostantCertify(CertifyArgs),
    /// Commutation and independence of the Delta_d.
    InvariantRing(DegreeArgs),
    /// Comparison with the commutative case q = 1.
    Classical(ClassicalArgs),
    /// Seeded randomized property checks.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub stage: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    /// Memoized right insertion.
    Engine,
    Leftmost,
    Rightmost,
    /// Random descents, seeded by --seed.
    Random,
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub expr: String,
    #[arg(long, value_enum, default_value_t = StrategyArg::Engine)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Args)]
pub struct QdetArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated rows of a minor, e.g. 1,3.
    #[arg(long, value_delimiter = ',', requires = "cols")]
    pub rows: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', requires = "rows")]
    pub cols: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long)]
    pub n: usize,
    /// Minor size; all sizes when omitted.
    #[arg(long)]
    pub d: Option<usize>,
    /// The weighted family Delta'_d.
    #[arg(long, conflicts_with = "stage")]
    pub prime: bool,
    /// The truncated family Delta_d^(t).
    #[arg(long)]
    pub stage: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoactionArg {
    Alpha,
    Beta,
    BetaLiteral,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub n: usize,
    /// Coaction to test; both alpha (on Delta_d) and beta (on Delta'_d)
    /// when omitted.
    #[arg(long, value_enum)]
    pub check: Option<CoactionArg>,
    /// Test this expression instead of the Delta families.
    #[arg(long)]
    pub expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct PbwArgs {
    #[arg(long)]
    pub n: usize,
    /// Single stage; all stages 1..=n when omitted.
    #[arg(long)]
    pub stage: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub max_overlap_degree: usize,
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_degree: usize,
    /// Exact for n <= 2 and sampled otherwise when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    /// Right module: candidate * Delta-monomial.
    #[arg(long)]
    pub right: bool,
    /// Loosen (or tighten, if negative) the diagonal bound.
    #[arg(long, hide = true, default_value_t = 0, allow_negative_numbers = true)]
    pub diagonal_slack: i32,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    #[arg(long)]
    pub n: usize,
    /// Longest random word in the commutativity test.
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Random integer matrices.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Random word pairs.
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

/// Result of a command: text for standard output, the JSON report, and
/// whether the checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub report: Value,
    pub pass: bool,
}

/// A bad flag value, reported with exit code 2.
#[derive(Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Thread cap from `--threads`, else `QKOSTANT_THREADS`.
pub fn thread_cap(flag: Option<usize>) -> Result<Option<usize>, UsageError> {
    if let Some(k) = flag {
        if k == 0 {
            return Err(UsageError("--threads must be at least 1".into()));
        }
        return Ok(Some(k));
    }
    match std::env::var("QKOSTANT_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(UsageError(format!("QKOSTANT_THREADS={v} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}
