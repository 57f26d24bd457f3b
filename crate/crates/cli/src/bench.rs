//! Timing table over seeded random graphs.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use splitcut::{count_solutions, Graph, SolveError, SolverConfig};

use crate::args::{index_params, BenchArgs, BenchFormat, EngineName, ProblemName, SPLITLIST_DEFAULT_MAX_N};
use crate::failure::Failure;

#[derive(Debug, Serialize)]
pub struct Row {
    pub n: usize,
    pub rep: usize,
    pub edges: usize,
    pub engine: &'static str,
    /// `ok` or `skipped` (vertex count above the engine's cap).
    pub status: &'static str,
    pub count: Option<String>,
    pub time_ms: Option<f64>,
}

/// Graph number `rep` with `n` vertices; depends only on `(seed, n, rep)`.
pub fn instance(seed: u64, n: usize, rep: usize, p: f64) -> Result<Graph, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | rep as u64);
    Graph::random(n, p, &mut rng).map_err(Failure::instance)
}

pub fn run(args: &BenchArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    args.problem.check_flags()?;
    if args.problem.problem == ProblemName::Icc {
        return Err(Failure::usage("bench generates its graphs and cannot take a --constraints file; use dcut, internal or abdom"));
    }
    if !(0.0..=1.0).contains(&args.p) {
        return Err(Failure::usage(format!("--p must lie in [0, 1], got {}", args.p)));
    }
    if args.engines.is_empty() {
        return Err(Failure::usage("--engines is empty"));
    }
    let base = SolverConfig {
        index: index_params(args.index, None),
        prune: !args.no_prune,
        max_n: args.max_n.unwrap_or(SPLITLIST_DEFAULT_MAX_N),
        ..SolverConfig::no_delegation()
    };

    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for n in args.n.0..=args.n.1 {
        for rep in 0..args.reps {
            let g = instance(args.seed, n, rep, args.p)?;
            let spec = args.problem.spec_for(&g)?;
            let mut seen: Option<u64> = None;
            for &engine in &args.engines {
                let cfg = SolverConfig { engine: engine.into(), ..base };
                let start = Instant::now();
                let row = match count_solutions(&g, &spec, &cfg) {
                    Ok(count) => {
                        if seen.is_some_and(|c| c != count) {
                            disagreements.push(format!("n={n} rep={rep}"));
                        }
                        seen.get_or_insert(count);
                        Row {
                            n,
                            rep,
                            edges: g.edge_count(),
                            engine: engine_name(engine),
                            status: "ok",
                            count: Some(count.to_string()),
                            time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
                        }
                    }
                    Err(SolveError::TooLarge { .. }) => Row {
                        n,
                        rep,
                        edges: g.edge_count(),
                        engine: engine_name(engine),
                        status: "skipped",
                        count: None,
                        time_ms: None,
                    },
                    Err(e) => return Err(e.into()),
                };
                log::info!("n={n} rep={rep} {}: {}", row.engine, row.status);
                rows.push(row);
            }
        }
    }

    if json || args.format == BenchFormat::Json {
        serde_json::to_writer_pretty(&mut *out, &rows).map_err(Failure::internal)?;
        writeln!(out)?;
    } else {
        let mut w = csv::Writer::from_writer(&mut *out);
        for row in &rows {
            w.serialize(row).map_err(Failure::internal)?;
        }
        w.flush()?;
    }
    if !disagreements.is_empty() {
        return Err(Failure::internal(anyhow::anyhow!("engine counts disagree on {}", disagreements.join(", "))));
    }
    Ok(())
}

fn engine_name(e: EngineName) -> &'static str {
    splitcut::SolverEngine::from(e).name()
}
