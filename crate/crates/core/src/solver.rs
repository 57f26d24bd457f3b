//! The split-and-list solver.
//!
//! The vertices are split into `V_A` (first half) and `V_B`. Every proper
//! bipartition `(S', R')` of `V_B` becomes a data vector in a
//! [`DominanceIndex`] and every proper bipartition `(S, R)` of `V_A` a query;
//! a query dominates a data vector exactly when `(S ∪ S', R ∪ R')` is
//! feasible. That is phase A. Phase B checks directly the pairs where one of
//! `S, R, S', R'` is empty. Every ordered cut is met exactly once across the
//! two phases, so counts add up.

use std::time::{Duration, Instant};

use crate::encoder::{Encoding, Entry, HalfEncoder};
use crate::error::SolveError;
use crate::graph::{split_halves, Cut, Graph, VertexSet};
use crate::index::{DominanceIndex, IndexParams, PointSet, Vectors};
use crate::oracle::{brute_force, brute_force_find, naive_pair_join, OracleOptions, BRUTE_FORCE_MAX_N, PAIR_JOIN_MAX_N};
use crate::problem::{Mode, ProblemKind, ProblemSpec, VertexConstraints};
use crate::validate::validate_cut;

/// Queries are encoded and answered this many at a time.
const QUERY_CHUNK: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SolverEngine {
    #[default]
    SplitList,
    Brute,
    PairJoin,
}

impl SolverEngine {
    pub fn name(self) -> &'static str {
        match self {
            SolverEngine::SplitList => "splitlist",
            SolverEngine::Brute => "brute",
            SolverEngine::PairJoin => "pairjoin",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub engine: SolverEngine,
    pub index: IndexParams,
    /// Drop half-bipartitions that already break an upper bound.
    pub prune: bool,
    /// Solve Internal Partition through its two-entry encoding rather than
    /// the eight-entry interval form.
    pub internal_direct: bool,
    /// Graphs with at most this many vertices go to brute force.
    pub brute_below: usize,
    pub max_n: usize,
    pub brute_max_n: usize,
    pub pair_join_max_n: usize,
    /// Upper bound on the bytes held by stored vectors plus one query chunk.
    pub memory_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            engine: SolverEngine::SplitList,
            index: IndexParams::default(),
            prune: true,
            internal_direct: true,
            brute_below: 8,
            max_n: 64,
            brute_max_n: BRUTE_FORCE_MAX_N,
            pair_join_max_n: PAIR_JOIN_MAX_N,
            memory_budget: 4 << 30,
        }
    }
}

impl SolverConfig {
    /// Always runs both phases, however small the graph.
    pub fn no_delegation() -> Self {
        SolverConfig { brute_below: 0, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Data vectors stored in the index (summed over size targets when optimizing).
    pub stored: u64,
    pub queries: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub feasible: bool,
    pub count: Option<u64>,
    pub witness: Option<Cut>,
    pub optimal_size: Option<usize>,
    pub stats: SolveStats,
}

/// Solves `spec` on `g` in `spec.mode` with the engine named in `cfg`.
pub fn solve(g: &Graph, spec: &ProblemSpec, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    spec.check(g)?;
    let limit = match cfg.engine {
        SolverEngine::SplitList => cfg.max_n,
        SolverEngine::Brute => cfg.brute_max_n,
        SolverEngine::PairJoin => cfg.pair_join_max_n,
    };
    if g.n() > limit {
        return Err(SolveError::TooLarge { n: g.n(), limit });
    }
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let mut result = match spec.mode {
        Mode::Count => {
            let count = run_count(g, spec, spec.size_target, cfg, &mut stats)?;
            SolveResult { feasible: count > 0, count: Some(count), witness: None, optimal_size: None, stats }
        }
        Mode::Decide | Mode::Witness => {
            let witness = run_witness(g, spec, spec.size_target, cfg, &mut stats)?;
            SolveResult {
                feasible: witness.is_some(),
                count: None,
                witness: if spec.mode == Mode::Witness { witness } else { None },
                optimal_size: None,
                stats,
            }
        }
        Mode::MinimizeLeft | Mode::MaximizeLeft => {
            let dir = if spec.mode == Mode::MinimizeLeft { Direction::Minimize } else { Direction::Maximize };
            let found = optimize(g, spec, dir, cfg, &mut stats)?;
            SolveResult {
                feasible: found.is_some(),
                count: None,
                optimal_size: found.map(|(t, _)| t),
                witness: found.map(|(_, c)| c),
                stats,
            }
        }
    };
    result.stats.elapsed = start.elapsed();
    Ok(result)
}

/// Exact number of feasible ordered cuts.
pub fn count_solutions(g: &Graph, spec: &ProblemSpec, cfg: &SolverConfig) -> Result<u64, SolveError> {
    let r = solve(g, &spec.clone().with_mode(Mode::Count), cfg)?;
    Ok(r.count.expect("count mode yields a count"))
}

/// Some feasible cut, if one exists.
pub fn construct_witness(g: &Graph, spec: &ProblemSpec, cfg: &SolverConfig) -> Result<Option<Cut>, SolveError> {
    Ok(solve(g, &spec.clone().with_mode(Mode::Witness), cfg)?.witness)
}

/// Restricts `spec` to cuts with `|L| = t` and solves it in `spec.mode`.
pub fn solve_with_size(g: &Graph, spec: &ProblemSpec, t: usize, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    solve(g, &spec.clone().with_size(t), cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

/// Smallest or largest `|L|` over feasible cuts.
pub fn optimize_size(g: &Graph, spec: &ProblemSpec, dir: Direction, cfg: &SolverConfig) -> Result<Option<usize>, SolveError> {
    let mode = match dir {
        Direction::Minimize => Mode::MinimizeLeft,
        Direction::Maximize => Mode::MaximizeLeft,
    };
    Ok(solve(g, &ProblemSpec { size_target: None, ..spec.clone() }.with_mode(mode), cfg)?.optimal_size)
}

fn optimize(
    g: &Graph,
    spec: &ProblemSpec,
    dir: Direction,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Result<Option<(usize, Cut)>, SolveError> {
    let n = g.n();
    let sizes: Vec<usize> = match (spec.size_target, dir) {
        (Some(t), _) => vec![t],
        (None, Direction::Minimize) => (1..n).collect(),
        (None, Direction::Maximize) => (1..n).rev().collect(),
    };
    for t in sizes {
        if let Some(cut) = run_witness(g, spec, Some(t), cfg, stats)? {
            return Ok(Some((t, cut)));
        }
    }
    Ok(None)
}

fn sized(spec: &ProblemSpec, t: Option<usize>) -> ProblemSpec {
    ProblemSpec { size_target: t, ..spec.clone() }
}

fn run_count(
    g: &Graph,
    spec: &ProblemSpec,
    t: Option<usize>,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Result<u64, SolveError> {
    let spec = sized(spec, t);
    match effective_engine(g, cfg) {
        SolverEngine::Brute => Ok(brute_force(g, &spec, OracleOptions { max_n: cfg.brute_max_n, materialize: false })?.count),
        SolverEngine::PairJoin => Ok(naive_pair_join(g, &spec, cfg.pair_join_max_n)?.count),
        SolverEngine::SplitList => {
            let plan = Plan::new(g, &spec, cfg)?;
            let mut count = plan.degenerate_count();
            count += plan.joined_count(stats)?;
            Ok(count)
        }
    }
}

fn run_witness(
    g: &Graph,
    spec: &ProblemSpec,
    t: Option<usize>,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Result<Option<Cut>, SolveError> {
    let spec = sized(spec, t);
    match effective_engine(g, cfg) {
        SolverEngine::Brute => brute_force_find(g, &spec, cfg.brute_max_n),
        SolverEngine::PairJoin => Ok(naive_pair_join(g, &spec, cfg.pair_join_max_n)?.first),
        SolverEngine::SplitList => {
            let plan = Plan::new(g, &spec, cfg)?;
            if let Some(cut) = plan.degenerate_witness() {
                return Ok(Some(cut));
            }
            plan.joined_witness(stats)
        }
    }
}

fn effective_engine(g: &Graph, cfg: &SolverConfig) -> SolverEngine {
    if cfg.engine == SolverEngine::SplitList && g.n() <= cfg.brute_below {
        SolverEngine::Brute
    } else {
        cfg.engine
    }
}

/// Everything fixed for one split-and-list run.
struct Plan<'g> {
    g: &'g Graph,
    spec: ProblemSpec,
    cfg: SolverConfig,
    va: VertexSet,
    vb: VertexSet,
    constraints: Option<Vec<VertexConstraints>>,
    encoding: Encoding,
}

impl<'g> Plan<'g> {
    fn new(g: &'g Graph, spec: &ProblemSpec, cfg: &SolverConfig) -> Result<Self, SolveError> {
        let (va, vb) = split_halves(g);
        let (encoding, constraints) = match &spec.kind {
            ProblemKind::InternalPartition if cfg.internal_direct => (Encoding::Internal, None),
            kind => (Encoding::Icc, Some(kind.to_icc(g)?)),
        };
        Ok(Plan { g, spec: spec.clone(), cfg: *cfg, va, vb, constraints, encoding })
    }

    fn feasible(&self, left: VertexSet) -> bool {
        validate_cut(self.g, &self.spec, &Cut::from_left(self.g.n(), left)).is_feasible()
    }

    /// Left sides of phase B: `S ∈ {∅, V_A}` with any `S'`, then proper `S`
    /// with `S' ∈ {∅, V_B}`. Improper overall cuts are rejected by
    /// `validate_cut`.
    fn degenerate_candidates(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let improper_a: Vec<VertexSet> = if self.va.is_empty() { vec![self.va] } else { vec![VertexSet::EMPTY, self.va] };
        let first = improper_a.into_iter().flat_map(move |s| self.vb.subsets().map(move |s2| s.union(s2)));
        let second = proper_subsets(self.va)
            .flat_map(move |s| [VertexSet::EMPTY, self.vb].into_iter().map(move |s2| s.union(s2)));
        first.chain(second)
    }

    fn degenerate_count(&self) -> u64 {
        self.degenerate_candidates().filter(|&l| self.feasible(l)).count() as u64
    }

    fn degenerate_witness(&self) -> Option<Cut> {
        self.degenerate_candidates().find(|&l| self.feasible(l)).map(|l| Cut::from_left(self.g.n(), l))
    }

    fn has_join_phase(&self) -> bool {
        self.va.len() >= 2 && self.vb.len() >= 2
    }

    fn encoder(&self) -> HalfEncoder<'g> {
        HalfEncoder::new(self.g, self.va, self.vb, self.encoding, self.constraints.as_deref(), self.spec.size_target)
    }

    fn check_memory(&self, dim: usize) -> Result<(), SolveError> {
        let data = (1u64 << self.vb.len()) - 2;
        let queries = ((1u64 << self.va.len()) - 2).min(QUERY_CHUNK as u64);
        let per_row = (dim * std::mem::size_of::<Entry>()) as u64;
        let estimate = (data + queries) * per_row + data * 8;
        if estimate > self.cfg.memory_budget {
            return Err(SolveError::MemoryBudget { estimate, budget: self.cfg.memory_budget });
        }
        Ok(())
    }

    fn build_index(&self, enc: &HalfEncoder<'_>) -> Result<DominanceIndex<Entry>, SolveError> {
        let dim = enc.dim();
        self.check_memory(dim)?;
        let mut points = PointSet::with_capacity(dim, (1usize << self.vb.len()) - 2)?;
        for s in proper_subsets(self.vb) {
            if self.cfg.prune && enc.is_dead(self.vb, s) {
                continue;
            }
            points.push_with(s.bits(), 0, |row| enc.write_data(s, row));
        }
        Ok(DominanceIndex::build(points, self.cfg.index)?)
    }

    /// Calls `f` on successive chunks of encoded queries with their `S` sets.
    fn for_query_chunks<B>(
        &self,
        enc: &HalfEncoder<'_>,
        mut f: impl FnMut(&[VertexSet], &Vectors<Entry>) -> Result<Option<B>, SolveError>,
    ) -> Result<Option<B>, SolveError> {
        let dim = enc.dim();
        let rows = ((1usize << self.va.len()) - 2).min(QUERY_CHUNK);
        let mut lefts = Vec::with_capacity(rows);
        let mut subsets = proper_subsets(self.va).peekable();
        while subsets.peek().is_some() {
            lefts.clear();
            let mut batch = Vectors::with_capacity(dim, rows)?;
            for s in subsets.by_ref() {
                if self.cfg.prune && enc.is_dead(self.va, s) {
                    continue;
                }
                batch.push_with(0, |row| enc.write_query(s, row));
                lefts.push(s);
                if lefts.len() == QUERY_CHUNK {
                    break;
                }
            }
            if lefts.is_empty() {
                continue;
            }
            if let Some(b) = f(&lefts, &batch)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    fn joined_count(&self, stats: &mut SolveStats) -> Result<u64, SolveError> {
        if !self.has_join_phase() {
            return Ok(0);
        }
        let enc = self.encoder();
        let index = self.build_index(&enc)?;
        stats.stored += index.len() as u64;
        let mut total = 0u64;
        if !index.is_empty() {
            self.for_query_chunks::<()>(&enc, |lefts, batch| {
                stats.queries += lefts.len() as u64;
                total += index.batch_count(batch)?.iter().sum::<u64>();
                Ok(None)
            })?;
        }
        Ok(total)
    }

    fn joined_witness(&self, stats: &mut SolveStats) -> Result<Option<Cut>, SolveError> {
        if !self.has_join_phase() {
            return Ok(None);
        }
        let enc = self.encoder();
        let index = self.build_index(&enc)?;
        stats.stored += index.len() as u64;
        if index.is_empty() {
            return Ok(None);
        }
        let n = self.g.n();
        self.for_query_chunks(&enc, |lefts, batch| {
            stats.queries += lefts.len() as u64;
            Ok(index
                .find_any(batch)?
                .map(|(qi, id)| Cut::from_left(n, lefts[qi].union(VertexSet::from_bits(id)))))
        })
    }
}

fn proper_subsets(half: VertexSet) -> impl Iterator<Item = VertexSet> {
    half.subsets().filter(move |&s| !s.is_empty() && s != half)
}

/// Phase-A and phase-B left sides, for checking that the two phases split
/// the cut space. Only meant for small graphs.
pub fn phase_candidates(g: &Graph) -> (Vec<VertexSet>, Vec<VertexSet>) {
    let (va, vb) = split_halves(g);
    let plan = Plan {
        g,
        spec: ProblemSpec::internal(),
        cfg: SolverConfig::default(),
        va,
        vb,
        constraints: None,
        encoding: Encoding::Internal,
    };
    let degenerate: Vec<VertexSet> = plan.degenerate_candidates().collect();
    let joined: Vec<VertexSet> = if plan.has_join_phase() {
        proper_subsets(va).flat_map(|s| proper_subsets(vb).map(move |s2| s.union(s2))).collect()
    } else {
        Vec::new()
    };
    (joined, degenerate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::problem::Interval;

    fn cfg() -> SolverConfig {
        SolverConfig::no_delegation()
    }

    fn p4() -> Graph {
        parse_graph("4 3\n1 2\n2 3\n3 4").unwrap()
    }
    fn c4() -> Graph {
        parse_graph("4 4\n1 2\n2 3\n3 4\n4 1").unwrap()
    }
    fn k4() -> Graph {
        parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap()
    }
    fn k3() -> Graph {
        parse_graph("3 3\n1 2\n2 3\n1 3").unwrap()
    }
    fn indep() -> ProblemSpec {
        ProblemSpec::abdom(Interval::new(0, 0).unwrap(), Interval::new(0, 3).unwrap())
    }

    #[test]
    fn named_counts() {
        assert_eq!(count_solutions(&p4(), &ProblemSpec::internal(), &cfg()).unwrap(), 2);
        assert_eq!(count_solutions(&Graph::empty(4).unwrap(), &ProblemSpec::internal(), &cfg()).unwrap(), 14);
        assert_eq!(count_solutions(&k3(), &indep(), &cfg()).unwrap(), 3);
        assert_eq!(count_solutions(&c4(), &ProblemSpec::dcut(1), &cfg()).unwrap(), 4);
    }

    #[test]
    fn p4_internal_found_only_in_degenerate_phase() {
        let g = p4();
        let plan = Plan::new(&g, &ProblemSpec::internal(), &cfg()).unwrap();
        assert_eq!(plan.degenerate_count(), 2);
        assert_eq!(plan.joined_count(&mut SolveStats::default()).unwrap(), 0);
    }

    #[test]
    fn decisions() {
        let r = solve(&c4(), &ProblemSpec::dcut(1).with_mode(Mode::Decide), &cfg()).unwrap();
        assert!(r.feasible);
        assert_eq!((r.count, r.witness), (None, None));
        let r = solve(&k4(), &ProblemSpec::dcut(1).with_mode(Mode::Decide), &cfg()).unwrap();
        assert!(!r.feasible);
    }

    #[test]
    fn witnesses() {
        let spec = ProblemSpec::dcut(1);
        let w = construct_witness(&c4(), &spec, &cfg()).unwrap().unwrap();
        assert!(validate_cut(&c4(), &spec, &w).is_feasible());
        assert_eq!(construct_witness(&k4(), &spec, &cfg()).unwrap(), None);

        let two = parse_graph("4 2\n1 2\n3 4").unwrap();
        let w = construct_witness(&two, &ProblemSpec::internal(), &cfg()).unwrap().unwrap();
        assert!(w.left.bits() == 0b0011 || w.left.bits() == 0b1100);
    }

    #[test]
    fn sizes_and_optimization() {
        let count = |t| solve_with_size(&k3(), &indep(), t, &cfg()).unwrap().count.unwrap();
        assert_eq!((count(1), count(2)), (3, 0));
        let e4 = Graph::empty(4).unwrap();
        let r = solve_with_size(&e4, &ProblemSpec::internal(), 2, &cfg()).unwrap();
        assert_eq!(r.count, Some(6));
        assert!(matches!(solve_with_size(&e4, &ProblemSpec::internal(), 4, &cfg()), Err(SolveError::Spec(_))));

        assert_eq!(optimize_size(&k3(), &indep(), Direction::Maximize, &cfg()).unwrap(), Some(1));
        assert_eq!(optimize_size(&k4(), &ProblemSpec::dcut(1), Direction::Minimize, &cfg()).unwrap(), None);
        assert_eq!(optimize_size(&e4, &ProblemSpec::internal(), Direction::Maximize, &cfg()).unwrap(), Some(3));
        assert_eq!(optimize_size(&e4, &ProblemSpec::internal(), Direction::Minimize, &cfg()).unwrap(), Some(1));
    }

    #[test]
    fn tiny_graphs_use_only_degenerate_phase() {
        for n in 1..4 {
            let g = Graph::empty(n).unwrap();
            let want = (1u64 << n) - 2;
            assert_eq!(count_solutions(&g, &ProblemSpec::internal(), &cfg()).unwrap(), want);
        }
    }

    #[test]
    fn limits() {
        let g = Graph::empty(10).unwrap();
        let small = SolverConfig { max_n: 9, ..cfg() };
        assert!(matches!(solve(&g, &ProblemSpec::internal(), &small), Err(SolveError::TooLarge { .. })));
        let tight = SolverConfig { memory_budget: 16, ..cfg() };
        assert!(matches!(solve(&g, &ProblemSpec::internal(), &tight), Err(SolveError::MemoryBudget { .. })));
    }

    #[test]
    fn engines_agree_on_named_instances() {
        for engine in [SolverEngine::SplitList, SolverEngine::Brute, SolverEngine::PairJoin] {
            let c = SolverConfig { engine, ..cfg() };
            assert_eq!(count_solutions(&c4(), &ProblemSpec::dcut(1), &c).unwrap(), 4);
            let r = solve(&k3(), &indep().with_mode(Mode::MaximizeLeft), &c).unwrap();
            assert_eq!(r.optimal_size, Some(1));
        }
    }

    #[test]
    fn phases_partition_cut_space() {
        for n in 1..=9 {
            let g = Graph::empty(n).unwrap();
            let (a, b) = phase_candidates(&g);
            let mut all: Vec<u64> = a.iter().chain(&b).map(|s| s.bits()).collect();
            all.sort_unstable();
            let len = all.len();
            all.dedup();
            assert_eq!(all.len(), len, "overlap at n = {n}");
            assert_eq!(len as u64, 1u64 << n);
        }
    }
}
