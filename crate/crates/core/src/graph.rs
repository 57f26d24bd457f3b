//! Simple undirected graphs on at most 64 vertices, stored as adjacency
//! bitmasks.
//!
//! All in-memory APIs use 0-based vertex indices. The text edge-list format
//! is 1-based; [`parse_graph`] performs the translation.

use std::fmt;

use rand::Rng;

use crate::error::ParseError;

/// Largest supported vertex count. Vertex sets are single machine words.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, one bit per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., n - 1}`.
    #[inline]
    pub const fn first(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// The half-open index range `[lo, hi)`.
    pub fn range(lo: usize, hi: usize) -> Self {
        VertexSet(Self::first(hi).0 & !Self::first(lo).0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut bits = 0u64;
        for v in it {
            debug_assert!(v < MAX_VERTICES);
            bits |= 1u64 << v;
        }
        VertexSet(bits)
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// `universe \ self`.
    #[inline]
    pub const fn complement_in(self, universe: VertexSet) -> VertexSet {
        VertexSet(universe.0 & !self.0)
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending iterator over members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Iterator over all subsets of `self` (including empty and `self`),
    /// in increasing order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets { universe: self.0, next: Some(0) }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

/// Subset enumeration by the `(s - u) & u` trick.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(VertexSet(cur))
    }
}

/// An ordered bipartition `(left, right)` of the vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Cut {
    /// The cut with the given left side; everything else goes right.
    pub fn from_left(n: usize, left: VertexSet) -> Self {
        let all = VertexSet::first(n);
        Cut { left: left.intersection(all), right: left.complement_in(all) }
    }

    /// Both sides nonempty.
    pub fn is_proper(&self) -> bool {
        !self.left.is_empty() && !self.right.is_empty()
    }

    /// Does this cut partition `{0..n}`?
    pub fn partitions(&self, n: usize) -> bool {
        self.left.intersection(self.right).is_empty() && self.left.union(self.right) == VertexSet::first(n)
    }
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, ParseError> {
        if n == 0 {
            return Err(ParseError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(ParseError::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n] })
    }

    /// Builds a graph from 0-based edges. Rejects loops, duplicates and
    /// out-of-range endpoints exactly as the text parser does.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ParseError> {
        let mut g = Graph::empty(n)?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(u, v, i + 1)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize, line: usize) -> Result<(), ParseError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(ParseError::VertexOutOfRange { line, vertex: w + 1, n: self.n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u + 1 });
        }
        if self.adj[u].contains(v) {
            return Err(ParseError::DuplicateEdge { line, u: u + 1, v: v + 1 });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Erdős–Rényi `G(n, p)`; edges are drawn in `(u, v)`, `u < v` order so the
    /// result is a pure function of the RNG state.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self, ParseError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p.clamp(0.0, 1.0)) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// All vertices.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::first(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// `|N(v) ∩ a|`.
    #[inline]
    pub fn neighbor_count(&self, v: usize, a: VertexSet) -> usize {
        self.adj[v].intersection(a).len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as 0-based `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Serializes to the 1-based edge-list format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

/// The fixed split `V_A = {0, .., ⌊n/2⌋ - 1}`, `V_B = rest`.
pub fn split_halves(g: &Graph) -> (VertexSet, VertexSet) {
    let half = g.n() / 2;
    (VertexSet::first(half), VertexSet::range(half, g.n()))
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v` with
/// 1-based endpoints. Lines starting with `#` and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::BadHeader { line: 1 })?;
    let (n, m) = parse_pair(header).ok_or(ParseError::BadHeader { line: hline })?;
    let mut g = Graph::empty(n)?;

    let mut found = 0usize;
    for (line, l) in lines {
        let (u, v) = parse_pair(l).ok_or(ParseError::BadEdgeLine { line })?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
            }
        }
        g.add_edge(u - 1, v - 1, line)?;
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, found });
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn parses_path() {
        let g = parse_graph("4 3\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(g.n(), 4);
        let degs: Vec<_> = (0..4).map(|v| g.degree(v)).collect();
        assert_eq!(degs, vec![1, 2, 2, 1]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn parses_single_vertex_and_triangle() {
        let g = parse_graph("1 0").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);

        let k3 = parse_graph("3 3\n1 2\n2 3\n1 3").unwrap();
        assert!((0..3).all(|v| k3.degree(v) == 2));
    }

    #[test]
    fn comments_and_crlf() {
        let g = parse_graph("# a comment\r\n3 2\r\n1 2\r\n# mid\r\n\r\n2 3\r\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_graph("3 1\n2 2"), Err(ParseError::SelfLoop { vertex: 2, .. })));
        assert!(matches!(parse_graph("3 2\n1 2\n2 1"), Err(ParseError::DuplicateEdge { .. })));
        assert!(matches!(parse_graph("3 1\n1 4"), Err(ParseError::VertexOutOfRange { vertex: 4, .. })));
        assert!(matches!(parse_graph("3 1\n0 1"), Err(ParseError::VertexOutOfRange { vertex: 0, .. })));
        assert!(matches!(
            parse_graph("3 2\n1 2"),
            Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 })
        ));
        assert_eq!(parse_graph("0 0"), Err(ParseError::NoVertices));
        assert!(matches!(parse_graph("65 0"), Err(ParseError::TooManyVertices { .. })));
        assert!(matches!(parse_graph(""), Err(ParseError::BadHeader { .. })));
        assert!(matches!(parse_graph("3 1\n1 x"), Err(ParseError::BadEdgeLine { line: 2 })));
    }

    #[test]
    fn neighbor_counts() {
        let p4 = parse_graph("4 3\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(p4.neighbor_count(1, set(&[0, 2])), 2);
        assert_eq!(p4.neighbor_count(0, VertexSet::EMPTY), 0);
        let k3 = parse_graph("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(k3.neighbor_count(0, set(&[1])), 1);
    }

    #[test]
    fn halves() {
        let g = Graph::empty(4).unwrap();
        assert_eq!(split_halves(&g), (set(&[0, 1]), set(&[2, 3])));
        let g = Graph::empty(1).unwrap();
        assert_eq!(split_halves(&g), (VertexSet::EMPTY, set(&[0])));
        let g = Graph::empty(5).unwrap();
        assert_eq!(split_halves(&g), (set(&[0, 1]), set(&[2, 3, 4])));
        let g = Graph::empty(64).unwrap();
        let (a, b) = split_halves(&g);
        assert_eq!((a.len(), b.len()), (32, 32));
    }

    #[test]
    fn subset_enumeration() {
        let u = set(&[1, 3, 4]);
        let subs: Vec<_> = u.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(u)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = parse_graph("5 4\n1 2\n2 3\n3 4\n5 1").unwrap();
        assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }
}
