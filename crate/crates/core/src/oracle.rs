//! Reference engines used to check the split-and-list solver.
//!
//! [`brute_force`] tries all `2^n` left sides against [`validate_cut`].
//! [`naive_pair_join`] runs the same split and encodings as the solver but
//! joins the two halves with a plain double loop, which separates encoding
//! mistakes from index mistakes.

use rayon::prelude::*;

use crate::encoder::{
    append_size_dims, encode_icc_data, encode_icc_query, encode_internal_data, encode_internal_query, make_offset,
    EncodedVector, Entry,
};
use crate::error::SolveError;
use crate::graph::{split_halves, Cut, Graph, VertexSet};
use crate::problem::{ProblemKind, ProblemSpec};
use crate::validate::validate_cut;

/// Default vertex limit for [`brute_force`].
pub const BRUTE_FORCE_MAX_N: usize = 26;
/// Default vertex limit for [`naive_pair_join`].
pub const PAIR_JOIN_MAX_N: usize = 36;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub max_n: usize,
    /// Keep every feasible cut in the result.
    pub materialize: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_n: BRUTE_FORCE_MAX_N, materialize: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    pub count: u64,
    /// Feasible cuts in increasing order of the left side's bit pattern.
    pub cuts: Option<Vec<Cut>>,
    pub min_left: Option<usize>,
    pub max_left: Option<usize>,
}

impl OracleResult {
    fn absorb(&mut self, other: OracleResult) {
        self.count += other.count;
        if let (Some(a), Some(b)) = (self.cuts.as_mut(), other.cuts) {
            a.extend(b);
        }
        self.min_left = opt_merge(self.min_left, other.min_left, usize::min);
        self.max_left = opt_merge(self.max_left, other.max_left, usize::max);
    }
}

fn opt_merge(a: Option<usize>, b: Option<usize>, f: fn(usize, usize) -> usize) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(f(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn guard(g: &Graph, limit: usize) -> Result<(), SolveError> {
    if g.n() > limit {
        return Err(SolveError::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

const CHUNK_BITS: u32 = 16;

/// Enumerates every ordered cut `(L, V \ L)` and keeps the proper ones that
/// pass [`validate_cut`] (size target included).
pub fn brute_force(g: &Graph, spec: &ProblemSpec, opts: OracleOptions) -> Result<OracleResult, SolveError> {
    spec.check(g)?;
    guard(g, opts.max_n.min(63))?;
    let n = g.n();
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n as u32);
    let parts: Vec<OracleResult> = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            let mut r = OracleResult { cuts: opts.materialize.then(Vec::new), ..Default::default() };
            for bits in c * chunk..(c + 1) * chunk {
                let cut = Cut::from_left(n, VertexSet::from_bits(bits));
                if validate_cut(g, spec, &cut).is_feasible() {
                    r.count += 1;
                    let size = cut.left.len();
                    r.min_left = Some(r.min_left.map_or(size, |m| m.min(size)));
                    r.max_left = Some(r.max_left.map_or(size, |m| m.max(size)));
                    if let Some(cuts) = r.cuts.as_mut() {
                        cuts.push(cut);
                    }
                }
            }
            r
        })
        .collect();
    let mut out = OracleResult { cuts: opts.materialize.then(Vec::new), ..Default::default() };
    for p in parts {
        out.absorb(p);
    }
    Ok(out)
}

/// First feasible cut in increasing bit-pattern order of the left side.
pub fn brute_force_find(g: &Graph, spec: &ProblemSpec, max_n: usize) -> Result<Option<Cut>, SolveError> {
    spec.check(g)?;
    guard(g, max_n.min(63))?;
    let n = g.n();
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n as u32);
    Ok((0..total / chunk).into_par_iter().find_map_first(|c| {
        (c * chunk..(c + 1) * chunk)
            .map(|bits| Cut::from_left(n, VertexSet::from_bits(bits)))
            .find(|cut| validate_cut(g, spec, cut).is_feasible())
    }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairJoinResult {
    pub count: u64,
    /// The first feasible cut met, special cases first.
    pub first: Option<Cut>,
}

/// Split, encode, and compare every query against every data vector.
pub fn naive_pair_join(g: &Graph, spec: &ProblemSpec, max_n: usize) -> Result<PairJoinResult, SolveError> {
    spec.check(g)?;
    guard(g, max_n.min(63))?;
    let n = g.n();
    let (va, vb) = split_halves(g);
    let mut out = PairJoinResult::default();
    let mut record = |left: VertexSet| {
        out.count += 1;
        out.first.get_or_insert(Cut::from_left(n, left));
    };

    // Special cases: one of S, R, S', R' is empty.
    let improper_a = if va.is_empty() { vec![va] } else { vec![VertexSet::EMPTY, va] };
    for &s in &improper_a {
        for s2 in vb.subsets() {
            let cut = Cut::from_left(n, s.union(s2));
            if validate_cut(g, spec, &cut).is_feasible() {
                record(cut.left);
            }
        }
    }
    for s in va.subsets().filter(|&s| !s.is_empty() && s != va) {
        for s2 in [VertexSet::EMPTY, vb] {
            let cut = Cut::from_left(n, s.union(s2));
            if validate_cut(g, spec, &cut).is_feasible() {
                record(cut.left);
            }
        }
    }

    if va.len() < 2 || vb.len() < 2 {
        return Ok(out);
    }
    let proper = |half: VertexSet| half.subsets().filter(move |&s| !s.is_empty() && s != half);

    let (queries, data): (Vec<EncodedVector>, Vec<EncodedVector>) = match &spec.kind {
        ProblemKind::InternalPartition => (
            proper(va).map(|s| encode_internal_query(g, va, vb, s, s.complement_in(va))).collect::<Result<_, _>>()?,
            proper(vb).map(|s| encode_internal_data(g, va, vb, s, s.complement_in(vb))).collect::<Result<_, _>>()?,
        ),
        kind => {
            let r = make_offset(&kind.to_icc(g)?, n);
            let data = proper(vb)
                .map(|s| {
                    let mut p = encode_icc_data(g, va, vb, s, s.complement_in(vb))?;
                    for (x, o) in p.entries.iter_mut().zip(&r.entries) {
                        *x += o;
                    }
                    Ok(p)
                })
                .collect::<Result<_, SolveError>>()?;
            let queries =
                proper(va).map(|s| encode_icc_query(g, va, vb, s, s.complement_in(va))).collect::<Result<_, _>>()?;
            (queries, data)
        }
    };
    let (queries, data) = match spec.size_target {
        None => (queries, data),
        Some(t) => (
            queries.iter().map(|q| append_size_dims(q, Some(t), q.left.len())).collect::<Result<_, _>>()?,
            data.iter().map(|p| append_size_dims(p, Some(t), p.left.len())).collect::<Result<_, _>>()?,
        ),
    };

    for q in &queries {
        for p in &data {
            if dominates(&q.entries, &p.entries) {
                record(q.left.union(p.left));
            }
        }
    }
    Ok(out)
}

fn dominates(q: &[Entry], p: &[Entry]) -> bool {
    q.len() == p.len() && q.iter().zip(p).all(|(a, b)| a >= b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::problem::Interval;

    fn opts() -> OracleOptions {
        OracleOptions { max_n: BRUTE_FORCE_MAX_N, materialize: true }
    }

    #[test]
    fn two_disjoint_edges() {
        let g = parse_graph("4 2\n1 2\n3 4").unwrap();
        let r = brute_force(&g, &ProblemSpec::internal(), opts()).unwrap();
        assert_eq!(r.count, 2);
        let lefts: Vec<u64> = r.cuts.unwrap().iter().map(|c| c.left.bits()).collect();
        assert_eq!(lefts, vec![0b0011, 0b1100]);
    }

    #[test]
    fn k4_and_k3() {
        let k4 = parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap();
        assert_eq!(brute_force(&k4, &ProblemSpec::dcut(1), opts()).unwrap().count, 0);
        let k3 = parse_graph("3 3\n1 2\n2 3\n1 3").unwrap();
        let spec = ProblemSpec::abdom(Interval::new(0, 0).unwrap(), Interval::new(0, 3).unwrap());
        let r = brute_force(&k3, &spec, opts()).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!((r.min_left, r.max_left), (Some(1), Some(1)));
    }

    #[test]
    fn pair_join_small_cases() {
        let e4 = Graph::empty(4).unwrap();
        assert_eq!(naive_pair_join(&e4, &ProblemSpec::internal(), PAIR_JOIN_MAX_N).unwrap().count, 14);
        let c4 = parse_graph("4 4\n1 2\n2 3\n3 4\n4 1").unwrap();
        let r = naive_pair_join(&c4, &ProblemSpec::dcut(1), PAIR_JOIN_MAX_N).unwrap();
        assert_eq!(r.count, 4);
        assert!(validate_cut(&c4, &ProblemSpec::dcut(1), &r.first.unwrap()).is_feasible());
    }

    #[test]
    fn guards() {
        let g = Graph::empty(30).unwrap();
        assert!(matches!(brute_force(&g, &ProblemSpec::internal(), OracleOptions::default()), Err(SolveError::TooLarge { .. })));
        let g = Graph::empty(40).unwrap();
        assert!(matches!(naive_pair_join(&g, &ProblemSpec::internal(), PAIR_JOIN_MAX_N), Err(SolveError::TooLarge { .. })));
    }

    #[test]
    fn find_agrees_with_count() {
        let c4 = parse_graph("4 4\n1 2\n2 3\n3 4\n4 1").unwrap();
        let cut = brute_force_find(&c4, &ProblemSpec::dcut(1), 26).unwrap().unwrap();
        assert_eq!(cut.left.bits(), 0b0011);
        let k4 = parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap();
        assert_eq!(brute_force_find(&k4, &ProblemSpec::dcut(1), 26).unwrap(), None);
    }
}
