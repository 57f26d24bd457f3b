//! Command-line grammar and its translation into solver inputs.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use splitcut::{
    problem::parse_constraints, Graph, IndexParams, Interval, Mode, ProblemSpec, SolverConfig, SolverEngine,
};

use crate::failure::Failure;

/// Default vertex cap for the split-and-list engine; `--max-n` lifts it.
pub const SPLITLIST_DEFAULT_MAX_N: usize = 40;

#[derive(Parser, Debug)]
#[command(name = "splitcut", version, about = "Exact solvers for degree-constrained graph cuts")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a feasible cut exists.
    Solve(RunArgs),
    /// Count feasible cuts.
    Count(RunArgs),
    /// Print one feasible cut.
    Witness(RunArgs),
    /// Find the smallest or largest feasible left side.
    Optimize(OptimizeArgs),
    /// Time engines on random graphs.
    Bench(BenchArgs),
    /// Cross-check the engines' counts on one instance.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProblemName {
    Dcut,
    Internal,
    Abdom,
    Icc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineName {
    Splitlist,
    Brute,
    Pairjoin,
}

impl From<EngineName> for SolverEngine {
    fn from(e: EngineName) -> Self {
        match e {
            EngineName::Splitlist => SolverEngine::SplitList,
            EngineName::Brute => SolverEngine::Brute,
            EngineName::Pairjoin => SolverEngine::PairJoin,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IndexName {
    Recursive,
    Naive,
}

/// `lo:hi`, either end possibly negative before clamping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
        Ok(Span { lo: parse(lo)?, hi: parse(hi)? })
    }
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemName,
    /// Cross-degree bound for dcut.
    #[arg(long)]
    pub d: Option<usize>,
    /// Left-vertex cross-degree interval for abdom.
    #[arg(long)]
    pub alpha: Option<Span>,
    /// Right-vertex cross-degree interval for abdom.
    #[arg(long)]
    pub beta: Option<Span>,
    /// Per-vertex interval file for icc.
    #[arg(long)]
    pub constraints: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value = "splitlist")]
    pub engine: EngineName,
    #[arg(long, value_enum, default_value = "recursive")]
    pub index: IndexName,
    /// Keep half-bipartitions that already break an upper bound.
    #[arg(long)]
    pub no_prune: bool,
    /// Shuffle the index's coordinate order with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Raise (or lower) the vertex cap of the chosen engine.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Only cuts whose left side has exactly this many vertices.
    #[arg(long)]
    pub size: Option<usize>,
    /// Edge-list file, or `-` for stdin.
    pub graph: PathBuf,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, conflicts_with = "maximize", required_unless_present = "maximize")]
    pub minimize: bool,
    #[arg(long)]
    pub maximize: bool,
    pub graph: PathBuf,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub size: Option<usize>,
    pub graph: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Vertex counts as `lo:hi` (inclusive) or a single value.
    #[arg(long, default_value = "12:14", value_parser = parse_range)]
    pub n: (usize, usize),
    /// Edge probability of the random graphs.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "splitlist,brute")]
    pub engines: Vec<EngineName>,
    #[arg(long, value_enum, default_value = "recursive")]
    pub index: IndexName,
    #[arg(long)]
    pub no_prune: bool,
    /// Vertex cap for splitlist rows.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Output format; `--json` is shorthand for `--format json`.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: BenchFormat,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

impl ProblemArgs {
    /// Rejects flags that belong to a different problem kind.
    pub fn check_flags(&self) -> Result<(), Failure> {
        let p = self.problem;
        let stray = [
            ("--d", self.d.is_some(), ProblemName::Dcut),
            ("--alpha", self.alpha.is_some(), ProblemName::Abdom),
            ("--beta", self.beta.is_some(), ProblemName::Abdom),
            ("--constraints", self.constraints.is_some(), ProblemName::Icc),
        ];
        for (flag, given, owner) in stray {
            if given && p != owner {
                return Err(Failure::usage(format!("{flag} does not apply to --problem {}", p.name())));
            }
        }
        let missing = match p {
            ProblemName::Dcut if self.d.is_none() => Some("--d"),
            ProblemName::Abdom if self.alpha.is_none() => Some("--alpha"),
            ProblemName::Abdom if self.beta.is_none() => Some("--beta"),
            ProblemName::Icc if self.constraints.is_none() => Some("--constraints"),
            _ => None,
        };
        match missing {
            Some(flag) => Err(Failure::usage(format!("--problem {} requires {flag}", p.name()))),
            None => Ok(()),
        }
    }

    /// Builds the specification for graph `g`. Interval flags are clamped to
    /// `[0, n]` once `n` is known.
    pub fn spec_for(&self, g: &Graph) -> Result<ProblemSpec, Failure> {
        let n = g.n();
        let spec = match self.problem {
            ProblemName::Dcut => ProblemSpec::dcut(self.d.unwrap_or(0)),
            ProblemName::Internal => ProblemSpec::internal(),
            ProblemName::Abdom => {
                let clamp = |s: Option<Span>| {
                    let s = s.expect("checked by check_flags");
                    Interval::clamped(s.lo, s.hi, n).map_err(Failure::instance)
                };
                ProblemSpec::abdom(clamp(self.alpha)?, clamp(self.beta)?)
            }
            ProblemName::Icc => {
                let path = self.constraints.as_ref().expect("checked by check_flags");
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::instance(anyhow::anyhow!("{}: {e}", path.display())))?;
                let cs = parse_constraints(&text, n)
                    .map_err(|e| Failure::instance(anyhow::anyhow!("{}: {e}", path.display())))?;
                ProblemSpec::icc(cs)
            }
        };
        spec.check(g).map_err(Failure::instance)?;
        Ok(spec)
    }
}

impl ProblemName {
    pub fn name(self) -> &'static str {
        match self {
            ProblemName::Dcut => "dcut",
            ProblemName::Internal => "internal",
            ProblemName::Abdom => "abdom",
            ProblemName::Icc => "icc",
        }
    }
}

pub fn index_params(index: IndexName, seed: Option<u64>) -> IndexParams {
    let base = match index {
        IndexName::Recursive => IndexParams::default(),
        IndexName::Naive => IndexParams::naive(),
    };
    match seed {
        Some(seed) => IndexParams { shuffle_coordinates: true, seed, ..base },
        None => base,
    }
}

impl EngineArgs {
    pub fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig {
            engine: self.engine.into(),
            index: index_params(self.index, self.seed),
            prune: !self.no_prune,
            max_n: SPLITLIST_DEFAULT_MAX_N,
            ..SolverConfig::default()
        };
        if let Some(cap) = self.max_n {
            match self.engine {
                EngineName::Splitlist => cfg.max_n = cap,
                EngineName::Brute => cfg.brute_max_n = cap,
                EngineName::Pairjoin => cfg.pair_join_max_n = cap,
            }
        }
        cfg
    }
}

/// Mode of a single-instance subcommand.
pub fn mode_of(command: &Command) -> Mode {
    match command {
        Command::Solve(_) => Mode::Decide,
        Command::Count(_) | Command::Oracle(_) | Command::Bench(_) => Mode::Count,
        Command::Witness(_) => Mode::Witness,
        Command::Optimize(a) if a.maximize => Mode::MaximizeLeft,
        Command::Optimize(_) => Mode::MinimizeLeft,
    }
}
