//! Result records and their JSON / plain-text renderings.

use std::io::Write;

use serde::Serialize;
use splitcut::{Cut, SolveResult};

#[derive(Debug, Serialize, PartialEq)]
pub struct Report {
    pub problem: String,
    pub n: usize,
    pub mode: String,
    pub feasible: bool,
    /// Decimal string so that consumers never lose precision.
    pub count: Option<String>,
    pub witness: Option<Witness>,
    pub optimal_size: Option<usize>,
    pub stats: Stats,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct Witness {
    /// 1-based vertex labels of the left side, ascending.
    pub left: Vec<usize>,
}

impl From<&Cut> for Witness {
    fn from(cut: &Cut) -> Self {
        Witness { left: cut.left.iter().map(|v| v + 1).collect() }
    }
}

#[derive(Debug, Serialize, PartialEq)]
pub struct Stats {
    pub stored: u64,
    pub queries: u64,
    pub time_ms: f64,
}

impl Report {
    pub fn new(problem: &str, n: usize, mode: &str, r: &SolveResult) -> Self {
        Report {
            problem: problem.to_string(),
            n,
            mode: mode.to_string(),
            feasible: r.feasible,
            count: r.count.map(|c| c.to_string()),
            witness: r.witness.as_ref().map(Witness::from),
            optimal_size: r.optimal_size,
            stats: Stats {
                stored: r.stats.stored,
                queries: r.stats.queries,
                time_ms: r.stats.elapsed.as_secs_f64() * 1e3,
            },
        }
    }

    pub fn write(&self, out: &mut dyn Write, json: bool) -> std::io::Result<()> {
        if json {
            serde_json::to_writer(&mut *out, self)?;
            return writeln!(out);
        }
        writeln!(out, "problem:  {}", self.problem)?;
        writeln!(out, "n:        {}", self.n)?;
        writeln!(out, "mode:     {}", self.mode)?;
        writeln!(out, "feasible: {}", self.feasible)?;
        if let Some(c) = &self.count {
            writeln!(out, "count:    {c}")?;
        }
        if let Some(t) = self.optimal_size {
            writeln!(out, "optimal:  {t}")?;
        }
        if let Some(w) = &self.witness {
            let labels: Vec<String> = w.left.iter().map(|v| v.to_string()).collect();
            writeln!(out, "left:     {}", labels.join(" "))?;
        }
        writeln!(
            out,
            "time:     {:.3} ms ({} stored, {} queries)",
            self.stats.time_ms, self.stats.stored, self.stats.queries
        )
    }
}
