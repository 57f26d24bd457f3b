//! Dominance range counting and reporting.
//!
//! A stored point `y` is dominated by a query `q` when `y[i] <= q[i]` on
//! every coordinate. Two engines answer the same questions:
//!
//! * [`Engine::Naive`] scans every stored point for every query.
//! * [`Engine::Recursive`] answers a whole batch of queries at once with an
//!   offline divide-and-conquer over coordinates. On the current coordinate
//!   `c` the points are split at their median `m` (ties go low) and the
//!   queries at `q[c] < m` / `q[c] >= m`. Low queries can only reach low
//!   points; high queries meet high points on the same coordinate set and
//!   low points with `c` already settled. Coordinates on which every query
//!   bounds every point are dropped, and queries below every point on a
//!   coordinate are discarded, so a node whose coordinate set runs empty
//!   credits all its pairs at once.
//!
//! The recursion is driven by an explicit work stack, so deep splits cannot
//! exhaust the thread stack.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::IndexError;

/// Coordinate types the index can store.
pub trait Coord: Copy + Ord + Send + Sync + fmt::Debug {}

impl<T: Copy + Ord + Send + Sync + fmt::Debug> Coord for T {}

/// A dense row-major batch of equal-length vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Coord> Vectors<T> {
    pub fn new(dim: usize) -> Result<Self, IndexError> {
        if dim == 0 {
            return Err(IndexError::ZeroDimension);
        }
        Ok(Vectors { dim, data: Vec::new() })
    }

    pub fn with_capacity(dim: usize, rows: usize) -> Result<Self, IndexError> {
        let mut v = Self::new(dim)?;
        v.data.reserve(dim * rows);
        Ok(v)
    }

    pub fn from_rows<R: AsRef<[T]>>(dim: usize, rows: &[R]) -> Result<Self, IndexError> {
        let mut v = Self::with_capacity(dim, rows.len())?;
        for r in rows {
            v.push(r.as_ref())?;
        }
        Ok(v)
    }

    pub fn push(&mut self, row: &[T]) -> Result<(), IndexError> {
        if row.len() != self.dim {
            return Err(IndexError::DimensionMismatch { expected: self.dim, found: row.len() });
        }
        self.data.extend_from_slice(row);
        Ok(())
    }

    /// Appends a row filled in place by `fill`.
    pub fn push_with(&mut self, zero: T, fill: impl FnOnce(&mut [T])) {
        let start = self.data.len();
        self.data.resize(start + self.dim, zero);
        fill(&mut self.data[start..]);
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.dim)
    }

    fn slice(&self, lo: usize, hi: usize) -> &[T] {
        &self.data[lo * self.dim..hi * self.dim]
    }
}

/// Stored points, each tagged with a caller-chosen id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<T> {
    vectors: Vectors<T>,
    ids: Vec<u64>,
}

impl<T: Coord> PointSet<T> {
    pub fn new(dim: usize) -> Result<Self, IndexError> {
        Ok(PointSet { vectors: Vectors::new(dim)?, ids: Vec::new() })
    }

    pub fn with_capacity(dim: usize, n: usize) -> Result<Self, IndexError> {
        Ok(PointSet { vectors: Vectors::with_capacity(dim, n)?, ids: Vec::with_capacity(n) })
    }

    /// Points with ids `0, 1, 2, ...`.
    pub fn from_rows<R: AsRef<[T]>>(dim: usize, rows: &[R]) -> Result<Self, IndexError> {
        let vectors = Vectors::from_rows(dim, rows)?;
        let ids = (0..rows.len() as u64).collect();
        Ok(PointSet { vectors, ids })
    }

    pub fn push(&mut self, id: u64, row: &[T]) -> Result<(), IndexError> {
        self.vectors.push(row)?;
        self.ids.push(id);
        Ok(())
    }

    pub fn push_with(&mut self, id: u64, zero: T, fill: impl FnOnce(&mut [T])) {
        self.vectors.push_with(zero, fill);
        self.ids.push(id);
    }

    pub fn dim(&self) -> usize {
        self.vectors.dim()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        self.vectors.row(i)
    }

    pub fn id(&self, i: usize) -> u64 {
        self.ids[i]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    /// Number of coordinates held, i.e. `len * dim`.
    pub fn coordinate_count(&self) -> usize {
        self.vectors.data.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    Naive,
    #[default]
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexParams {
    pub engine: Engine,
    /// A node with at most this many points or queries is scanned directly.
    pub leaf_threshold: usize,
    /// Visit coordinates in a seeded random order instead of index order.
    pub shuffle_coordinates: bool,
    pub seed: u64,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams { engine: Engine::Recursive, leaf_threshold: 32, shuffle_coordinates: false, seed: 0 }
    }
}

impl IndexParams {
    pub fn naive() -> Self {
        IndexParams { engine: Engine::Naive, ..Default::default() }
    }

    pub fn recursive(leaf_threshold: usize) -> Self {
        IndexParams { leaf_threshold, ..Default::default() }
    }
}

/// Counters describing one recursive batch run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursionStats {
    pub nodes: u64,
    pub leaves: u64,
    pub bulk_credits: u64,
    pub max_depth: u64,
    pub pairs_scanned: u64,
}

impl fmt::Display for RecursionStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} leaves={} bulk={} depth={} scanned_pairs={}",
            self.nodes, self.leaves, self.bulk_credits, self.max_depth, self.pairs_scanned
        )
    }
}

/// An immutable dominance index over a [`PointSet`].
#[derive(Clone, Debug)]
pub struct DominanceIndex<T> {
    points: PointSet<T>,
    params: IndexParams,
    order: Vec<usize>,
}

const NONE: u64 = u64::MAX;

impl<T: Coord> DominanceIndex<T> {
    pub fn build(points: PointSet<T>, params: IndexParams) -> Result<Self, IndexError> {
        let mut ids = points.ids.clone();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(IndexError::DuplicateId(w[0]));
        }
        let mut order: Vec<usize> = (0..points.dim()).collect();
        if params.shuffle_coordinates {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(params.seed));
        }
        Ok(DominanceIndex { points, params, order })
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &PointSet<T> {
        &self.points
    }

    pub fn params(&self) -> IndexParams {
        self.params
    }

    fn check_dim(&self, found: usize) -> Result<(), IndexError> {
        if found != self.dim() {
            return Err(IndexError::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }

    fn single(&self, q: &[T]) -> Result<Vectors<T>, IndexError> {
        self.check_dim(q.len())?;
        Vectors::from_rows(self.dim(), &[q])
    }

    /// Number of stored points dominated by `q`.
    pub fn count_dominated(&self, q: &[T]) -> Result<u64, IndexError> {
        Ok(self.batch_count(&self.single(q)?)?[0])
    }

    /// Id of some stored point dominated by `q`.
    pub fn find_dominated(&self, q: &[T]) -> Result<Option<u64>, IndexError> {
        Ok(self.batch_find(&self.single(q)?)?[0])
    }

    pub fn batch_count(&self, queries: &Vectors<T>) -> Result<Vec<u64>, IndexError> {
        Ok(self.batch_count_with_stats(queries)?.0)
    }

    pub fn batch_count_with_stats(&self, queries: &Vectors<T>) -> Result<(Vec<u64>, RecursionStats), IndexError> {
        self.check_dim(queries.dim())?;
        let sink = Sink::count(queries.len());
        let stats = self.run(queries, &sink);
        Ok((sink.into_counts(), stats))
    }

    /// For each query, the id of some dominated point.
    pub fn batch_find(&self, queries: &Vectors<T>) -> Result<Vec<Option<u64>>, IndexError> {
        self.check_dim(queries.dim())?;
        let sink = Sink::find(queries.len());
        self.run(queries, &sink);
        Ok(sink.into_witnesses().into_iter().map(|w| w.map(|p| self.points.id(p))).collect())
    }

    /// Some `(query index, point id)` pair with the point dominated, stopping
    /// as soon as one is known.
    pub fn find_any(&self, queries: &Vectors<T>) -> Result<Option<(usize, u64)>, IndexError> {
        self.check_dim(queries.dim())?;
        let sink = Sink::any();
        self.run(queries, &sink);
        Ok(sink.into_hit().map(|(q, p)| (q, self.points.id(p))))
    }

    fn run(&self, queries: &Vectors<T>, sink: &Sink) -> RecursionStats {
        if queries.is_empty() || self.points.is_empty() {
            return RecursionStats::default();
        }
        match self.params.engine {
            Engine::Naive => {
                naive_scan(&self.points.vectors, queries, sink);
                RecursionStats::default()
            }
            Engine::Recursive => self.run_recursive(queries, sink),
        }
    }

    fn run_recursive(&self, queries: &Vectors<T>, sink: &Sink) -> RecursionStats {
        // Query chunks are independent subproblems; one per worker thread.
        let workers = rayon::current_num_threads().max(1);
        let chunk = queries.len().div_ceil(workers).max(1024);
        let bounds: Vec<(usize, usize)> =
            (0..queries.len()).step_by(chunk).map(|lo| (lo, (lo + chunk).min(queries.len()))).collect();
        bounds
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut run = Recursion {
                    points: &self.points.vectors.data,
                    queries: queries.slice(lo, hi),
                    query_offset: lo,
                    dim: self.dim(),
                    leaf: self.params.leaf_threshold.max(1),
                    sink,
                    stats: RecursionStats::default(),
                };
                run.execute(&self.order, hi - lo, self.points.len());
                run.stats
            })
            .reduce(RecursionStats::default, |a, b| RecursionStats {
                nodes: a.nodes + b.nodes,
                leaves: a.leaves + b.leaves,
                bulk_credits: a.bulk_credits + b.bulk_credits,
                max_depth: a.max_depth.max(b.max_depth),
                pairs_scanned: a.pairs_scanned + b.pairs_scanned,
            })
    }
}

/// Where answers go. Counting sums with relaxed atomics, so totals do not
/// depend on the schedule.
enum Sink {
    Count(Vec<AtomicU64>),
    Find(Vec<AtomicU64>),
    Any { stop: AtomicBool, hit: AtomicU64 },
}

impl Sink {
    fn count(n: usize) -> Self {
        Sink::Count((0..n).map(|_| AtomicU64::new(0)).collect())
    }

    fn find(n: usize) -> Self {
        Sink::Find((0..n).map(|_| AtomicU64::new(NONE)).collect())
    }

    fn any() -> Self {
        Sink::Any { stop: AtomicBool::new(false), hit: AtomicU64::new(NONE) }
    }

    #[inline]
    fn stopped(&self) -> bool {
        matches!(self, Sink::Any { stop, .. } if stop.load(Ordering::Relaxed))
    }

    /// Query `q` dominates `count` points, the first of which is `first`.
    #[inline]
    fn credit(&self, q: usize, first: usize, count: u64) {
        if count == 0 {
            return;
        }
        match self {
            Sink::Count(c) => {
                c[q].fetch_add(count, Ordering::Relaxed);
            }
            Sink::Find(w) => {
                let _ = w[q].compare_exchange(NONE, first as u64, Ordering::Relaxed, Ordering::Relaxed);
            }
            Sink::Any { stop, hit } => {
                let packed = ((q as u64) << 32) | first as u64;
                if hit.compare_exchange(NONE, packed, Ordering::Relaxed, Ordering::Relaxed).is_ok() {
                    stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    /// Whether further hits for query `q` are still useful.
    #[inline]
    fn wants(&self, q: usize) -> bool {
        match self {
            Sink::Count(_) => true,
            Sink::Find(w) => w[q].load(Ordering::Relaxed) == NONE,
            Sink::Any { stop, .. } => !stop.load(Ordering::Relaxed),
        }
    }

    fn into_counts(self) -> Vec<u64> {
        match self {
            Sink::Count(c) => c.into_iter().map(AtomicU64::into_inner).collect(),
            _ => unreachable!("not a counting sink"),
        }
    }

    fn into_witnesses(self) -> Vec<Option<usize>> {
        match self {
            Sink::Find(w) => w
                .into_iter()
                .map(|a| {
                    let v = a.into_inner();
                    (v != NONE).then_some(v as usize)
                })
                .collect(),
            _ => unreachable!("not a find sink"),
        }
    }

    fn into_hit(self) -> Option<(usize, usize)> {
        match self {
            Sink::Any { hit, .. } => {
                let v = hit.into_inner();
                (v != NONE).then_some(((v >> 32) as usize, (v & 0xffff_ffff) as usize))
            }
            _ => unreachable!("not an any sink"),
        }
    }
}

#[inline]
fn dominated<T: Coord>(y: &[T], q: &[T]) -> bool {
    y.iter().zip(q).all(|(a, b)| a <= b)
}

fn naive_scan<T: Coord>(points: &Vectors<T>, queries: &Vectors<T>, sink: &Sink) {
    (0..queries.len()).into_par_iter().for_each(|qi| {
        if sink.stopped() {
            return;
        }
        let q = queries.row(qi);
        let mut count = 0u64;
        let mut first = 0usize;
        for (pi, y) in points.rows().enumerate() {
            if dominated(y, q) {
                if count == 0 {
                    first = pi;
                }
                count += 1;
                if !matches!(sink, Sink::Count(_)) {
                    break;
                }
            }
        }
        sink.credit(qi, first, count);
    });
}

/// A pending subproblem: `qs[q_lo..q_hi]` against `ps[p_lo..p_hi]` over the
/// coordinates in `active`, starting the round-robin at `next`.
struct Task {
    q: (usize, usize),
    p: (usize, usize),
    active: Vec<usize>,
    next: usize,
    depth: u64,
}

struct Recursion<'a, T> {
    points: &'a [T],
    queries: &'a [T],
    query_offset: usize,
    dim: usize,
    leaf: usize,
    sink: &'a Sink,
    stats: RecursionStats,
}

impl<T: Coord> Recursion<'_, T> {
    #[inline]
    fn pv(&self, p: u32, c: usize) -> T {
        self.points[p as usize * self.dim + c]
    }

    #[inline]
    fn qv(&self, q: u32, c: usize) -> T {
        self.queries[q as usize * self.dim + c]
    }

    fn execute(&mut self, order: &[usize], nq: usize, np: usize) {
        let mut qs: Vec<u32> = (0..nq as u32).collect();
        let mut ps: Vec<u32> = (0..np as u32).collect();
        let mut stack = vec![Task { q: (0, nq), p: (0, np), active: order.to_vec(), next: 0, depth: 0 }];
        while let Some(task) = stack.pop() {
            if self.sink.stopped() {
                return;
            }
            self.node(task, &mut qs, &mut ps, &mut stack);
        }
    }

    fn node(&mut self, task: Task, qs: &mut [u32], ps: &mut [u32], stack: &mut Vec<Task>) {
        let Task { q: (q_lo, mut q_hi), p: (p_lo, p_hi), mut active, mut next, depth } = task;
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);

        if !matches!(self.sink, Sink::Count(_)) {
            q_hi = q_lo + partition(&mut qs[q_lo..q_hi], |&q| self.sink.wants(self.query_offset + q as usize));
        }

        let split = loop {
            if q_lo == q_hi || p_lo == p_hi {
                return;
            }
            if active.is_empty() {
                self.stats.bulk_credits += 1;
                let first = ps[p_lo] as usize;
                for &q in &qs[q_lo..q_hi] {
                    self.sink.credit(self.query_offset + q as usize, first, (p_hi - p_lo) as u64);
                }
                return;
            }
            if q_hi - q_lo <= self.leaf || p_hi - p_lo <= self.leaf {
                self.scan(&qs[q_lo..q_hi], &ps[p_lo..p_hi], &active);
                return;
            }

            let pos = next % active.len();
            let c = active[pos];
            let (mut pmin, mut pmax) = (self.pv(ps[p_lo], c), self.pv(ps[p_lo], c));
            for &p in &ps[p_lo..p_hi] {
                let v = self.pv(p, c);
                pmin = pmin.min(v);
                pmax = pmax.max(v);
            }
            // Queries below every point on c dominate nothing here.
            q_hi = q_lo + partition(&mut qs[q_lo..q_hi], |&q| self.qv(q, c) >= pmin);
            if q_lo == q_hi {
                return;
            }
            let qmin = qs[q_lo..q_hi].iter().map(|&q| self.qv(q, c)).min().expect("nonempty");
            if qmin >= pmax {
                // Every remaining query bounds every point on c.
                active.remove(pos);
                next = pos;
                continue;
            }
            break (pos, c, pmax);
        };

        let (pos, c, pmax) = split;
        let np = p_hi - p_lo;
        let mid = (np - 1) / 2;
        let slice = &mut ps[p_lo..p_hi];
        slice.select_nth_unstable_by_key(mid, |&p| self.pv(p, c));
        let mut m = self.pv(slice[mid], c);
        if m == pmax {
            // All values from the median up are the maximum; split just below it.
            m = slice.iter().map(|&p| self.pv(p, c)).filter(|&v| v < pmax).max().expect("pmin < pmax");
        }
        let p_split = p_lo + partition(&mut ps[p_lo..p_hi], |&p| self.pv(p, c) <= m);
        let q_split = q_lo + partition(&mut qs[q_lo..q_hi], |&q| self.qv(q, c) < m);
        debug_assert!(p_split > p_lo && p_split < p_hi);

        let mut settled = active.clone();
        settled.remove(pos);
        let depth = depth + 1;
        // LIFO: the two same-coordinate halves run first, then the settled one.
        stack.push(Task { q: (q_split, q_hi), p: (p_lo, p_split), active: settled, next: pos, depth });
        stack.push(Task { q: (q_split, q_hi), p: (p_split, p_hi), active: active.clone(), next: pos + 1, depth });
        stack.push(Task { q: (q_lo, q_split), p: (p_lo, p_split), active, next: pos + 1, depth });
    }

    fn scan(&mut self, qs: &[u32], ps: &[u32], active: &[usize]) {
        self.stats.leaves += 1;
        let count_all = matches!(self.sink, Sink::Count(_));
        for &q in qs {
            let qrow = &self.queries[q as usize * self.dim..(q as usize + 1) * self.dim];
            let mut count = 0u64;
            let mut first = 0usize;
            for &p in ps {
                self.stats.pairs_scanned += 1;
                let prow = &self.points[p as usize * self.dim..(p as usize + 1) * self.dim];
                if active.iter().all(|&c| prow[c] <= qrow[c]) {
                    if count == 0 {
                        first = p as usize;
                    }
                    count += 1;
                    if !count_all {
                        break;
                    }
                }
            }
            self.sink.credit(self.query_offset + q as usize, first, count);
            if self.sink.stopped() {
                return;
            }
        }
    }
}

/// Moves elements satisfying `keep` to the front; returns how many there are.
fn partition<F: FnMut(&u32) -> bool>(xs: &mut [u32], mut keep: F) -> usize {
    let mut k = 0;
    for i in 0..xs.len() {
        if keep(&xs[i]) {
            xs.swap(i, k);
            k += 1;
        }
    }
    k
}
