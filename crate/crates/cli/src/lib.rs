//! Front end for the `splitcut` binary. [`run`] takes the argument vector
//! and an output stream and returns the process exit code, so tests can
//! drive it without spawning a process.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;

use clap::Parser;
use serde::Serialize;
use splitcut::oracle::{BRUTE_FORCE_MAX_N, PAIR_JOIN_MAX_N};
use splitcut::{brute_force, count_solutions, naive_pair_join, parse_graph, solve, Graph, OracleOptions, SolverConfig};

pub mod args;
pub mod bench;
pub mod failure;
pub mod report;

use args::{mode_of, Cli, Command, OracleArgs};
use failure::{Failure, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use report::Report;

/// Parses `argv` (program name first), runs the subcommand and writes its
/// result to `out`. Diagnostics go to stderr.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("thread pool already initialised: {e}");
        }
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let mode = mode_of(&cli.command);
    let (problem, engine, size, path) = match &cli.command {
        Command::Solve(a) | Command::Count(a) | Command::Witness(a) => (&a.problem, &a.engine, a.size, &a.graph),
        Command::Optimize(a) => (&a.problem, &a.engine, None, &a.graph),
        Command::Oracle(a) => return oracle(a, cli.json, out),
        Command::Bench(a) => return bench::run(a, cli.json, out).map(|()| EXIT_OK),
    };
    problem.check_flags()?;
    let g = read_graph(path)?;
    let mut spec = problem.spec_for(&g)?.with_mode(mode);
    if let Some(t) = size {
        spec = spec.with_size(t);
        spec.check(&g).map_err(Failure::instance)?;
    }
    let result = solve(&g, &spec, &engine.config())?;
    Report::new(spec.kind.name(), g.n(), mode.name(), &result).write(out, cli.json)?;
    Ok(EXIT_OK)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(Failure::instance)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::instance(anyhow::anyhow!("{}: {e}", path.display())))?
    };
    parse_graph(&text).map_err(|e| Failure::instance(anyhow::anyhow!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct OracleReport {
    problem: &'static str,
    n: usize,
    brute: Option<String>,
    pairjoin: Option<String>,
    splitlist: String,
    agree: bool,
}

/// Counts with every engine that fits and reports whether they agree.
/// Exits with [`EXIT_FAILURE`] on disagreement.
fn oracle(a: &OracleArgs, json: bool, out: &mut dyn Write) -> Result<u8, Failure> {
    a.problem.check_flags()?;
    let g = read_graph(&a.graph)?;
    let mut spec = a.problem.spec_for(&g)?;
    if let Some(t) = a.size {
        spec = spec.with_size(t);
        spec.check(&g).map_err(Failure::instance)?;
    }
    let n = g.n();
    let brute = (n <= BRUTE_FORCE_MAX_N)
        .then(|| brute_force(&g, &spec, OracleOptions::default()).map(|r| r.count))
        .transpose()?;
    let pairjoin = (n <= PAIR_JOIN_MAX_N).then(|| naive_pair_join(&g, &spec, n).map(|r| r.count)).transpose()?;
    let splitlist = count_solutions(&g, &spec, &SolverConfig::no_delegation())?;
    let agree = [brute, pairjoin].into_iter().flatten().all(|c| c == splitlist);
    let report = OracleReport {
        problem: spec.kind.name(),
        n,
        brute: brute.map(|c| c.to_string()),
        pairjoin: pairjoin.map(|c| c.to_string()),
        splitlist: splitlist.to_string(),
        agree,
    };
    if json {
        serde_json::to_writer(&mut *out, &report).map_err(Failure::internal)?;
        writeln!(out)?;
    } else {
        let show = |c: &Option<String>| c.clone().unwrap_or_else(|| "skipped".into());
        writeln!(out, "problem:   {}", report.problem)?;
        writeln!(out, "n:         {n}")?;
        writeln!(out, "brute:     {}", show(&report.brute))?;
        writeln!(out, "pairjoin:  {}", show(&report.pairjoin))?;
        writeln!(out, "splitlist: {}", report.splitlist)?;
        writeln!(out, "agree:     {agree}")?;
    }
    if !agree {
        eprintln!("error: engine counts disagree");
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}
