//! Vector encodings of half-bipartitions.
//!
//! A bipartition `(S, R)` of the first half `V_A` becomes a query vector and
//! a bipartition `(S', R')` of the second half `V_B` becomes a data vector,
//! arranged so that the query dominates the data vector (plus the constraint
//! offset, for interval constraints) exactly when `(S ∪ S', R ∪ R')` is a
//! feasible cut.
//!
//! Entry `(k, i)` (group `k`, vertex `i`) lives at position `k * n + i`.

use crate::error::EncodeError;
use crate::graph::{Graph, VertexSet};
use crate::problem::VertexConstraints;

/// Coordinate type of every graph encoding. Entries lie in `[-2n, 2n]`.
pub type Entry = i32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Query,
    Data,
}

/// Which family of inequalities the vectors encode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Encoding {
    /// Two entries per vertex: the own-side excess degree for either side.
    Internal,
    /// Eight entries per vertex: lower and upper bound of each of the four
    /// interval constraints.
    Icc,
}

impl Encoding {
    pub const fn groups(self) -> usize {
        match self {
            Encoding::Internal => 2,
            Encoding::Icc => 8,
        }
    }

    /// Vector length for an `n`-vertex graph, without size dimensions.
    pub const fn dim(self, n: usize) -> usize {
        self.groups() * n
    }
}

/// An encoded half-bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedVector {
    pub entries: Vec<Entry>,
    pub role: Role,
    /// The half (`V_A` for queries, `V_B` for data) this vector splits.
    pub half: VertexSet,
    /// The part of `half` destined for the left side (`S` or `S'`).
    pub left: VertexSet,
}

impl EncodedVector {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(k, i)` for a vector with `n` vertices per group.
    pub fn entry(&self, k: usize, i: usize, n: usize) -> Entry {
        self.entries[k * n + i]
    }

    /// The `groups` entries belonging to vertex `i`, in group order.
    pub fn vertex_entries(&self, i: usize, n: usize, groups: usize) -> Vec<Entry> {
        (0..groups).map(|k| self.entry(k, i, n)).collect()
    }
}

/// The constant vector of interval bounds added to every interval-constraint
/// data vector. Per vertex: `(a', -a'', b', -b'', c', -c'', d', -d'')` where
/// `a..d` are `left_inner, left_cross, right_inner, right_cross`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetVector {
    pub entries: Vec<Entry>,
}

pub fn make_offset(constraints: &[VertexConstraints], n: usize) -> OffsetVector {
    debug_assert_eq!(constraints.len(), n);
    let mut entries = vec![0; 8 * n];
    for (i, c) in constraints.iter().enumerate() {
        for (j, iv) in c.intervals().iter().enumerate() {
            entries[(2 * j) * n + i] = iv.lo as Entry;
            entries[(2 * j + 1) * n + i] = -(iv.hi as Entry);
        }
    }
    OffsetVector { entries }
}

fn check_half(half: VertexSet, left: VertexSet, right: VertexSet, which: &'static str) -> Result<(), EncodeError> {
    let ok = !left.is_empty()
        && !right.is_empty()
        && left.intersection(right).is_empty()
        && left.union(right) == half;
    if ok {
        Ok(())
    } else {
        Err(EncodeError::ImproperHalf(which))
    }
}

/// Internal-partition query vector of `(S, R)`, a proper bipartition of `V_A`.
pub fn encode_internal_query(
    g: &Graph,
    va: VertexSet,
    _vb: VertexSet,
    s: VertexSet,
    r: VertexSet,
) -> Result<EncodedVector, EncodeError> {
    check_half(va, s, r, "S, R")?;
    let mut entries = vec![0; Encoding::Internal.dim(g.n())];
    write_internal_query(g, s, r, &mut entries);
    Ok(EncodedVector { entries, role: Role::Query, half: va, left: s })
}

/// Internal-partition data vector of `(S', R')`, a proper bipartition of `V_B`.
pub fn encode_internal_data(
    g: &Graph,
    _va: VertexSet,
    vb: VertexSet,
    s: VertexSet,
    r: VertexSet,
) -> Result<EncodedVector, EncodeError> {
    check_half(vb, s, r, "S', R'")?;
    let mut entries = vec![0; Encoding::Internal.dim(g.n())];
    write_internal_data(g, s, r, &mut entries);
    Ok(EncodedVector { entries, role: Role::Data, half: vb, left: s })
}

/// Interval-constraint query vector of `(S, R)` (without offset).
pub fn encode_icc_query(
    g: &Graph,
    va: VertexSet,
    _vb: VertexSet,
    s: VertexSet,
    r: VertexSet,
) -> Result<EncodedVector, EncodeError> {
    check_half(va, s, r, "S, R")?;
    let mut entries = vec![0; Encoding::Icc.dim(g.n())];
    write_icc_query(g, s, r, &mut entries);
    Ok(EncodedVector { entries, role: Role::Query, half: va, left: s })
}

/// Interval-constraint data vector of `(S', R')` (without offset).
pub fn encode_icc_data(
    g: &Graph,
    _va: VertexSet,
    vb: VertexSet,
    s: VertexSet,
    r: VertexSet,
) -> Result<EncodedVector, EncodeError> {
    check_half(vb, s, r, "S', R'")?;
    let mut entries = vec![0; Encoding::Icc.dim(g.n())];
    write_icc_data(g, s, r, &mut entries);
    Ok(EncodedVector { entries, role: Role::Data, half: vb, left: s })
}

/// Appends the two size coordinates enforcing `|S| + |S'| = t`:
/// queries get `(t - |S|, |S|)`, data vectors `(|S'|, t - |S'|)`.
pub fn append_size_dims(v: &EncodedVector, t: Option<usize>, part_size: usize) -> Result<EncodedVector, EncodeError> {
    let t = t.ok_or(EncodeError::MissingSizeTarget)?;
    let mut out = v.clone();
    out.entries.extend_from_slice(&size_tail(v.role, t, part_size));
    Ok(out)
}

#[inline]
fn size_tail(role: Role, t: usize, part: usize) -> [Entry; 2] {
    let (t, part) = (t as Entry, part as Entry);
    match role {
        Role::Query => [t - part, part],
        Role::Data => [part, t - part],
    }
}

/// Fills `out[..2n]`; vertices outside `s ∪ r` are treated as the other half.
pub(crate) fn write_internal_query(g: &Graph, s: VertexSet, r: VertexSet, out: &mut [Entry]) {
    let n = g.n();
    let big = n as Entry;
    for i in 0..n {
        let ns = g.neighbor_count(i, s) as Entry;
        let nr = g.neighbor_count(i, r) as Entry;
        let (first, second) = if s.contains(i) {
            (ns - nr, big)
        } else if r.contains(i) {
            (big, nr - ns)
        } else {
            (ns - nr, nr - ns)
        };
        out[i] = first;
        out[n + i] = second;
    }
}

pub(crate) fn write_internal_data(g: &Graph, s: VertexSet, r: VertexSet, out: &mut [Entry]) {
    let n = g.n();
    let big = n as Entry;
    for i in 0..n {
        let ns = g.neighbor_count(i, s) as Entry;
        let nr = g.neighbor_count(i, r) as Entry;
        let (first, second) = if s.contains(i) {
            (nr - ns, -big)
        } else if r.contains(i) {
            (-big, ns - nr)
        } else {
            (nr - ns, ns - nr)
        };
        out[i] = first;
        out[n + i] = second;
    }
}

pub(crate) fn write_icc_query(g: &Graph, s: VertexSet, r: VertexSet, out: &mut [Entry]) {
    let n = g.n();
    let big = 2 * n as Entry;
    for i in 0..n {
        let ns = g.neighbor_count(i, s) as Entry;
        let nr = g.neighbor_count(i, r) as Entry;
        let row = if s.contains(i) {
            [ns, -ns, nr, -nr, big, big, big, big]
        } else if r.contains(i) {
            [big, big, big, big, nr, -nr, ns, -ns]
        } else {
            [ns, -ns, nr, -nr, nr, -nr, ns, -ns]
        };
        for (k, x) in row.into_iter().enumerate() {
            out[k * n + i] = x;
        }
    }
}

pub(crate) fn write_icc_data(g: &Graph, s: VertexSet, r: VertexSet, out: &mut [Entry]) {
    let n = g.n();
    let big = 2 * n as Entry;
    for i in 0..n {
        let ns = g.neighbor_count(i, s) as Entry;
        let nr = g.neighbor_count(i, r) as Entry;
        let row = if s.contains(i) {
            [-ns, ns, -nr, nr, -big, -big, -big, -big]
        } else if r.contains(i) {
            [-big, -big, -big, -big, -nr, nr, -ns, ns]
        } else {
            [-ns, ns, -nr, nr, -nr, nr, -ns, ns]
        };
        for (k, x) in row.into_iter().enumerate() {
            out[k * n + i] = x;
        }
    }
}

/// Batch encoder used by the solver: fixes the graph, the split, the
/// encoding family, the offset and the optional size target, then writes
/// vectors straight into caller buffers.
#[derive(Clone, Debug)]
pub struct HalfEncoder<'g> {
    g: &'g Graph,
    pub va: VertexSet,
    pub vb: VertexSet,
    pub encoding: Encoding,
    offset: Option<OffsetVector>,
    constraints: Option<Vec<VertexConstraints>>,
    size_target: Option<usize>,
}

impl<'g> HalfEncoder<'g> {
    /// `constraints` must be given for [`Encoding::Icc`] and is ignored for
    /// [`Encoding::Internal`].
    pub fn new(
        g: &'g Graph,
        va: VertexSet,
        vb: VertexSet,
        encoding: Encoding,
        constraints: Option<&[VertexConstraints]>,
        size_target: Option<usize>,
    ) -> Self {
        let constraints = match encoding {
            Encoding::Icc => Some(constraints.expect("interval encoding needs constraints").to_vec()),
            Encoding::Internal => None,
        };
        let offset = constraints.as_deref().map(|c| make_offset(c, g.n()));
        HalfEncoder { g, va, vb, encoding, offset, constraints, size_target }
    }

    pub fn dim(&self) -> usize {
        self.encoding.dim(self.g.n()) + if self.size_target.is_some() { 2 } else { 0 }
    }

    /// Query vector of `(s, va \ s)`.
    pub fn write_query(&self, s: VertexSet, out: &mut [Entry]) {
        let r = s.complement_in(self.va);
        let base = self.encoding.dim(self.g.n());
        match self.encoding {
            Encoding::Internal => write_internal_query(self.g, s, r, &mut out[..base]),
            Encoding::Icc => write_icc_query(self.g, s, r, &mut out[..base]),
        }
        if let Some(t) = self.size_target {
            out[base..base + 2].copy_from_slice(&size_tail(Role::Query, t, s.len()));
        }
    }

    /// Data vector of `(s, vb \ s)`, with the offset already added.
    pub fn write_data(&self, s: VertexSet, out: &mut [Entry]) {
        let r = s.complement_in(self.vb);
        let base = self.encoding.dim(self.g.n());
        match self.encoding {
            Encoding::Internal => write_internal_data(self.g, s, r, &mut out[..base]),
            Encoding::Icc => {
                write_icc_data(self.g, s, r, &mut out[..base]);
                let off = self.offset.as_ref().expect("offset present for interval encoding");
                for (x, o) in out[..base].iter_mut().zip(&off.entries) {
                    *x += *o;
                }
            }
        }
        if let Some(t) = self.size_target {
            out[base..base + 2].copy_from_slice(&size_tail(Role::Data, t, s.len()));
        }
    }

    /// True when the half-bipartition `(s, half \ s)` already breaks an upper
    /// bound that no completion can repair, so its vector can never take
    /// part in a dominating pair. Inner and cross neighbor counts only grow
    /// as the other half is added. Only applies to interval encodings and
    /// size targets.
    pub fn is_dead(&self, half: VertexSet, s: VertexSet) -> bool {
        if let Some(t) = self.size_target {
            if s.len() > t {
                return true;
            }
        }
        let Some(cs) = self.constraints.as_deref() else {
            return false;
        };
        let r = s.complement_in(half);
        for (i, c) in cs.iter().enumerate() {
            let ns = self.g.neighbor_count(i, s);
            let nr = self.g.neighbor_count(i, r);
            let left_fails = ns > c.left_inner.hi || nr > c.left_cross.hi;
            let right_fails = nr > c.right_inner.hi || ns > c.right_cross.hi;
            let dead = if s.contains(i) {
                left_fails
            } else if r.contains(i) {
                right_fails
            } else {
                left_fails && right_fails
            };
            if dead {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, split_halves};
    use crate::problem::{abdom_to_icc, dcut_to_icc, Interval};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().map(|x| x - 1).collect()
    }

    fn p4() -> Graph {
        parse_graph("4 3\n1 2\n2 3\n3 4").unwrap()
    }

    #[test]
    fn internal_query_examples() {
        let g = p4();
        let (va, vb) = split_halves(&g);
        let q = encode_internal_query(&g, va, vb, set(&[1]), set(&[2])).unwrap();
        assert_eq!(q.entries, vec![-1, 4, -1, 0, 4, -1, 1, 0]);
        let q = encode_internal_query(&g, va, vb, set(&[2]), set(&[1])).unwrap();
        assert_eq!(q.entries, vec![4, -1, 1, 0, -1, 4, -1, 0]);

        let e = Graph::empty(4).unwrap();
        let q = encode_internal_query(&e, va, vb, set(&[1]), set(&[2])).unwrap();
        assert_eq!(q.entries, vec![0, 4, 0, 0, 4, 0, 0, 0]);
    }

    #[test]
    fn internal_data_examples() {
        let g = p4();
        let (va, vb) = split_halves(&g);
        let p = encode_internal_data(&g, va, vb, set(&[3]), set(&[4])).unwrap();
        assert_eq!(p.entries, vec![0, -1, 1, -4, 0, 1, -4, 1]);
        let p = encode_internal_data(&g, va, vb, set(&[4]), set(&[3])).unwrap();
        assert_eq!(p.entries, vec![0, 1, -4, 1, 0, -1, 1, -4]);

        let e = Graph::empty(4).unwrap();
        let p = encode_internal_data(&e, va, vb, set(&[3]), set(&[4])).unwrap();
        assert_eq!(p.entries, vec![0, 0, 0, -4, 0, 0, -4, 0]);
    }

    #[test]
    fn icc_query_examples() {
        let g = p4();
        let (va, vb) = split_halves(&g);
        let q = encode_icc_query(&g, va, vb, set(&[1]), set(&[2])).unwrap();
        assert_eq!(q.dim(), 32);
        assert_eq!(q.vertex_entries(0, 4, 8), vec![0, 0, 1, -1, 8, 8, 8, 8]);
        assert_eq!(q.vertex_entries(2, 4, 8), vec![0, 0, 1, -1, 1, -1, 0, 0]);

        let e = Graph::empty(4).unwrap();
        let q = encode_icc_query(&e, va, vb, set(&[1]), set(&[2])).unwrap();
        assert_eq!(q.vertex_entries(0, 4, 8), vec![0, 0, 0, 0, 8, 8, 8, 8]);
    }

    #[test]
    fn icc_data_examples() {
        let g = p4();
        let (va, vb) = split_halves(&g);
        let p = encode_icc_data(&g, va, vb, set(&[3]), set(&[4])).unwrap();
        assert_eq!(p.vertex_entries(2, 4, 8), vec![0, 0, -1, 1, -8, -8, -8, -8]);
        assert_eq!(p.vertex_entries(1, 4, 8), vec![-1, 1, 0, 0, 0, 0, -1, 1]);

        let e = Graph::empty(4).unwrap();
        let p = encode_icc_data(&e, va, vb, set(&[3]), set(&[4])).unwrap();
        assert_eq!(p.vertex_entries(2, 4, 8), vec![0, 0, 0, 0, -8, -8, -8, -8]);
    }

    #[test]
    fn offset_examples() {
        let g = Graph::empty(4).unwrap();
        let per_vertex = |off: &OffsetVector, i: usize| -> Vec<Entry> { (0..8).map(|k| off.entries[k * 4 + i]).collect() };

        let off = make_offset(&dcut_to_icc(&g, 1).unwrap(), 4);
        for i in 0..4 {
            assert_eq!(per_vertex(&off, i), vec![0, -4, 0, -1, 0, -4, 0, -1]);
        }
        let off = make_offset(&[VertexConstraints::unconstrained(4); 4], 4);
        assert_eq!(per_vertex(&off, 3), vec![0, -4, 0, -4, 0, -4, 0, -4]);

        let cs = abdom_to_icc(&g, Interval::new(1, 2).unwrap(), Interval::new(0, 0).unwrap()).unwrap();
        let off = make_offset(&cs, 4);
        assert_eq!(per_vertex(&off, 0), vec![1, -2, 0, -4, 0, -4, 0, 0]);
    }

    #[test]
    fn size_dims() {
        let g = Graph::empty(4).unwrap();
        let (va, vb) = split_halves(&g);
        let q = encode_internal_query(&g, va, vb, set(&[1]), set(&[2])).unwrap();
        let p = encode_internal_data(&g, va, vb, set(&[3]), set(&[4])).unwrap();
        let dominates = |q: &EncodedVector, p: &EncodedVector| q.entries.iter().zip(&p.entries).all(|(a, b)| a >= b);

        let (q2, p2) = (append_size_dims(&q, Some(2), 1).unwrap(), append_size_dims(&p, Some(2), 1).unwrap());
        assert_eq!(&q2.entries[8..], &[1, 1]);
        assert_eq!(&p2.entries[8..], &[1, 1]);
        assert!(dominates(&q2, &p2));

        let q2 = append_size_dims(&q, Some(2), 2).unwrap();
        assert_eq!(&q2.entries[8..], &[0, 2]);
        assert!(!dominates(&q2, &p2));

        let (q3, p3) = (append_size_dims(&q, Some(3), 1).unwrap(), append_size_dims(&p, Some(3), 1).unwrap());
        assert_eq!((&q3.entries[8..], &p3.entries[8..]), (&[2, 1][..], &[1, 2][..]));
        assert!(!dominates(&q3, &p3));

        assert_eq!(append_size_dims(&q, None, 1), Err(EncodeError::MissingSizeTarget));
    }

    #[test]
    fn rejects_improper_halves() {
        let g = p4();
        let (va, vb) = split_halves(&g);
        assert!(encode_internal_query(&g, va, vb, va, VertexSet::EMPTY).is_err());
        assert!(encode_icc_data(&g, va, vb, VertexSet::EMPTY, vb).is_err());
        assert!(encode_icc_query(&g, va, vb, set(&[1]), set(&[1, 2])).is_err());
        assert!(encode_internal_data(&g, va, vb, set(&[3]), set(&[1])).is_err());
    }

    #[test]
    fn half_encoder_matches_free_functions() {
        let g = p4();
        let (va, vb) = split_halves(&g);
        let cs = dcut_to_icc(&g, 1).unwrap();
        let enc = HalfEncoder::new(&g, va, vb, Encoding::Icc, Some(&cs), None);
        let mut buf = vec![0; enc.dim()];
        enc.write_data(set(&[3]), &mut buf);
        let p = encode_icc_data(&g, va, vb, set(&[3]), set(&[4])).unwrap();
        let r = make_offset(&cs, 4);
        let expected: Vec<Entry> = p.entries.iter().zip(&r.entries).map(|(a, b)| a + b).collect();
        assert_eq!(buf, expected);
    }

    #[test]
    fn dead_half_detection() {
        // K4 under d = 1: S = {1}, R = {2} gives vertex 1 one cross neighbor,
        // still alive; in K4 every 2/2 split of V_B is alive too, but vertex
        // 3 in V_B sees one neighbor in each of S and R, so either placement
        // is still possible.
        let k4 = parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap();
        let (va, vb) = split_halves(&k4);
        let cs = dcut_to_icc(&k4, 0).unwrap();
        let enc = HalfEncoder::new(&k4, va, vb, Encoding::Icc, Some(&cs), None);
        assert!(enc.is_dead(va, set(&[1])));
        let cs = dcut_to_icc(&k4, 1).unwrap();
        let enc = HalfEncoder::new(&k4, va, vb, Encoding::Icc, Some(&cs), None);
        assert!(!enc.is_dead(va, set(&[1])));
        let internal = HalfEncoder::new(&k4, va, vb, Encoding::Internal, None, None);
        assert!(!internal.is_dead(va, set(&[1])));
    }
}
