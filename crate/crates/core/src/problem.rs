//! Problem specifications and their reductions to per-vertex interval
//! constraints.

use std::fmt;

use crate::error::{ConstraintFileError, SpecError};
use crate::graph::Graph;

/// A closed integer interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self, SpecError> {
        if lo > hi {
            return Err(SpecError::EmptyInterval { lo: lo as i64, hi: hi as i64 });
        }
        Ok(Interval { lo, hi })
    }

    /// `[0, n]`, i.e. no constraint on a neighbor count.
    pub const fn full(n: usize) -> Self {
        Interval { lo: 0, hi: n }
    }

    /// Intersects `[lo, hi]` with `[0, n]`. Neighbor counts never leave
    /// `[0, n]`, so clamping does not change which counts are accepted; it is
    /// logged at warn level all the same. An interval that misses `[0, n]`
    /// entirely is an error.
    pub fn clamped(lo: i64, hi: i64, n: usize) -> Result<Self, SpecError> {
        if lo > hi {
            return Err(SpecError::EmptyInterval { lo, hi });
        }
        let top = n as i64;
        if hi < 0 || lo > top {
            return Err(SpecError::IntervalOutOfRange { lo, hi, n });
        }
        let (clo, chi) = (lo.max(0), hi.min(top));
        if (clo, chi) != (lo, hi) {
            log::warn!("interval [{lo}, {hi}] clamped to [{clo}, {chi}]");
        }
        Ok(Interval { lo: clo as usize, hi: chi as usize })
    }

    #[inline]
    pub const fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// The four intervals attached to one vertex of an interval-constrained cut.
///
/// For `v` on the left side, `|N(v) ∩ L|` must lie in `left_inner` and
/// `|N(v) ∩ R|` in `left_cross`. For `v` on the right side, `|N(v) ∩ R|` must
/// lie in `right_inner` and `|N(v) ∩ L|` in `right_cross`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexConstraints {
    pub left_inner: Interval,
    pub left_cross: Interval,
    pub right_inner: Interval,
    pub right_cross: Interval,
}

impl VertexConstraints {
    pub const fn unconstrained(n: usize) -> Self {
        let f = Interval::full(n);
        VertexConstraints { left_inner: f, left_cross: f, right_inner: f, right_cross: f }
    }

    /// Each interval in the order `left_inner, left_cross, right_inner, right_cross`.
    pub fn intervals(&self) -> [Interval; 4] {
        [self.left_inner, self.left_cross, self.right_inner, self.right_cross]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// Every vertex has at most `d` neighbors across the cut.
    DCut { d: usize },
    /// Every vertex has at least as many neighbors on its own side as across.
    InternalPartition,
    /// `|N(v) ∩ L| ∈ alpha` for `v ∈ L` and `|N(v) ∩ L| ∈ beta` for `v ∈ R`.
    AlphaBetaDomination { alpha: Interval, beta: Interval },
    /// Vertex-specific interval constraints, one entry per vertex.
    IntervalConstrainedCut(Vec<VertexConstraints>),
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::DCut { .. } => "dcut",
            ProblemKind::InternalPartition => "internal",
            ProblemKind::AlphaBetaDomination { .. } => "abdom",
            ProblemKind::IntervalConstrainedCut(_) => "icc",
        }
    }

    /// The per-vertex interval form of this problem.
    pub fn to_icc(&self, g: &Graph) -> Result<Vec<VertexConstraints>, SpecError> {
        match self {
            ProblemKind::DCut { d } => dcut_to_icc(g, *d as i64),
            ProblemKind::InternalPartition => Ok(internal_to_icc(g)),
            ProblemKind::AlphaBetaDomination { alpha, beta } => abdom_to_icc(g, *alpha, *beta),
            ProblemKind::IntervalConstrainedCut(cs) => {
                check_constraint_count(g, cs)?;
                Ok(cs.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Decide,
    Count,
    Witness,
    MinimizeLeft,
    MaximizeLeft,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Decide => "decide",
            Mode::Count => "count",
            Mode::Witness => "witness",
            Mode::MinimizeLeft => "minimize_left",
            Mode::MaximizeLeft => "maximize_left",
        }
    }
}

/// What to solve and how.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// Restrict to cuts with `|L| = t`.
    pub size_target: Option<usize>,
    pub mode: Mode,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind) -> Self {
        ProblemSpec { kind, size_target: None, mode: Mode::Count }
    }

    pub fn dcut(d: usize) -> Self {
        Self::new(ProblemKind::DCut { d })
    }

    pub fn internal() -> Self {
        Self::new(ProblemKind::InternalPartition)
    }

    pub fn abdom(alpha: Interval, beta: Interval) -> Self {
        Self::new(ProblemKind::AlphaBetaDomination { alpha, beta })
    }

    pub fn icc(constraints: Vec<VertexConstraints>) -> Self {
        Self::new(ProblemKind::IntervalConstrainedCut(constraints))
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_size(mut self, t: usize) -> Self {
        self.size_target = Some(t);
        self
    }

    /// Checks parameter ranges against the graph.
    pub fn check(&self, g: &Graph) -> Result<(), SpecError> {
        let n = g.n();
        match &self.kind {
            ProblemKind::DCut { d } if *d > n => return Err(SpecError::DOutOfRange { d: *d as i64, n }),
            ProblemKind::AlphaBetaDomination { alpha, beta } => {
                for iv in [alpha, beta] {
                    if iv.lo > iv.hi || iv.hi > n {
                        return Err(SpecError::IntervalOutOfRange { lo: iv.lo as i64, hi: iv.hi as i64, n });
                    }
                }
            }
            ProblemKind::IntervalConstrainedCut(cs) => check_constraint_count(g, cs)?,
            _ => {}
        }
        if let Some(t) = self.size_target {
            if t == 0 || t >= n {
                return Err(SpecError::SizeOutOfRange { t, max: n.saturating_sub(1) });
            }
        }
        Ok(())
    }
}

fn check_constraint_count(g: &Graph, cs: &[VertexConstraints]) -> Result<(), SpecError> {
    if cs.len() != g.n() {
        return Err(SpecError::ConstraintCount { expected: g.n(), found: cs.len() });
    }
    Ok(())
}

/// d-Cut: cross-degree intervals `[0, d]` on both sides, inner counts free.
pub fn dcut_to_icc(g: &Graph, d: i64) -> Result<Vec<VertexConstraints>, SpecError> {
    let n = g.n();
    if d < 0 || d > n as i64 {
        return Err(SpecError::DOutOfRange { d, n });
    }
    let cross = Interval { lo: 0, hi: d as usize };
    let full = Interval::full(n);
    Ok(vec![
        VertexConstraints { left_inner: full, left_cross: cross, right_inner: full, right_cross: cross };
        n
    ])
}

/// (α, β)-Domination: `left_inner = α`, `right_cross = β`.
pub fn abdom_to_icc(g: &Graph, alpha: Interval, beta: Interval) -> Result<Vec<VertexConstraints>, SpecError> {
    let n = g.n();
    for iv in [alpha, beta] {
        if iv.lo > iv.hi {
            return Err(SpecError::EmptyInterval { lo: iv.lo as i64, hi: iv.hi as i64 });
        }
        if iv.hi > n {
            return Err(SpecError::IntervalOutOfRange { lo: iv.lo as i64, hi: iv.hi as i64, n });
        }
    }
    let full = Interval::full(n);
    Ok(vec![
        VertexConstraints { left_inner: alpha, left_cross: full, right_inner: full, right_cross: beta };
        n
    ])
}

/// Internal Partition: `|N_own(v)| >= |N_other(v)|` with both summing to
/// `deg(v)` is the same as `|N_own(v)| >= ceil(deg(v) / 2)`.
pub fn internal_to_icc(g: &Graph) -> Vec<VertexConstraints> {
    let n = g.n();
    let full = Interval::full(n);
    (0..n)
        .map(|v| {
            let own = Interval { lo: g.degree(v).div_ceil(2), hi: n };
            VertexConstraints { left_inner: own, left_cross: full, right_inner: own, right_cross: full }
        })
        .collect()
}

/// Reads a constraint file: one line per vertex,
/// `v a_lo a_hi b_lo b_hi c_lo c_hi d_lo d_hi` with 1-based `v`, where the
/// four intervals are `left_inner, left_cross, right_inner, right_cross`.
/// Lines may come in any order; `#` starts a comment line.
pub fn parse_constraints(text: &str, n: usize) -> Result<Vec<VertexConstraints>, ConstraintFileError> {
    let mut out: Vec<Option<VertexConstraints>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let nums: Vec<i64> = l
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ConstraintFileError::BadLine { line })?;
        if nums.len() != 9 {
            return Err(ConstraintFileError::BadLine { line });
        }
        let v = nums[0];
        if v < 1 || v > n as i64 {
            return Err(ConstraintFileError::VertexOutOfRange { line, vertex: v.max(0) as usize, n });
        }
        let v = v as usize;
        let iv = |k: usize| {
            Interval::clamped(nums[1 + 2 * k], nums[2 + 2 * k], n)
                .map_err(|source| ConstraintFileError::Interval { line, source })
        };
        let c = VertexConstraints {
            left_inner: iv(0)?,
            left_cross: iv(1)?,
            right_inner: iv(2)?,
            right_cross: iv(3)?,
        };
        let slot = &mut out[v - 1];
        if slot.is_some() {
            return Err(ConstraintFileError::DuplicateVertex { line, vertex: v });
        }
        *slot = Some(c);
    }
    out.into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(ConstraintFileError::MissingVertex { vertex: v + 1 }))
        .collect()
}

/// Writes constraints in the format read by [`parse_constraints`].
pub fn format_constraints(cs: &[VertexConstraints]) -> String {
    let mut s = String::new();
    for (v, c) in cs.iter().enumerate() {
        s.push_str(&(v + 1).to_string());
        for iv in c.intervals() {
            s.push_str(&format!(" {} {}", iv.lo, iv.hi));
        }
        s.push('\n');
    }
    s
}
