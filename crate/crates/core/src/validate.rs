//! Direct feasibility check of a cut against a problem definition.
//!
//! This is the trusted reference: it evaluates each problem's inequalities as
//! written and never goes through the per-vertex interval reduction or any
//! vector encoding.

use crate::graph::{Cut, Graph};
use crate::problem::{ProblemKind, ProblemSpec};

/// Which inequality a vertex broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Internal partition: fewer neighbors on own side than across.
    OwnSideMajority,
    /// d-Cut: more than `d` neighbors across.
    CrossDegree,
    /// (α, β)-Domination, left vertex: `|N_L(v)| ∉ α`.
    Alpha,
    /// (α, β)-Domination, right vertex: `|N_L(v)| ∉ β`.
    Beta,
    LeftInner,
    LeftCross,
    RightInner,
    RightCross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    /// The sides overlap or miss a vertex.
    NotAPartition,
    /// One side is empty.
    Improper,
    /// `|L|` differs from the requested size.
    WrongSize { left: usize, target: usize },
    /// First vertex (in index order) that breaks a constraint.
    Violation { vertex: usize, rule: Rule },
}

impl Verdict {
    #[inline]
    pub fn is_feasible(self) -> bool {
        self == Verdict::Feasible
    }
}

/// Checks `cut` against `spec`, including the size target when one is set.
pub fn validate_cut(g: &Graph, spec: &ProblemSpec, cut: &Cut) -> Verdict {
    if !cut.partitions(g.n()) {
        return Verdict::NotAPartition;
    }
    if !cut.is_proper() {
        return Verdict::Improper;
    }
    if let Some(t) = spec.size_target {
        if cut.left.len() != t {
            return Verdict::WrongSize { left: cut.left.len(), target: t };
        }
    }
    match first_violation(g, &spec.kind, cut) {
        None => Verdict::Feasible,
        Some((vertex, rule)) => Verdict::Violation { vertex, rule },
    }
}

fn first_violation(g: &Graph, kind: &ProblemKind, cut: &Cut) -> Option<(usize, Rule)> {
    for v in 0..g.n() {
        let to_left = g.neighbor_count(v, cut.left);
        let to_right = g.neighbor_count(v, cut.right);
        let on_left = cut.left.contains(v);
        let (own, other) = if on_left { (to_left, to_right) } else { (to_right, to_left) };
        let broken = match kind {
            ProblemKind::InternalPartition => (own < other).then_some(Rule::OwnSideMajority),
            ProblemKind::DCut { d } => (other > *d).then_some(Rule::CrossDegree),
            ProblemKind::AlphaBetaDomination { alpha, beta } => {
                if on_left {
                    (!alpha.contains(to_left)).then_some(Rule::Alpha)
                } else {
                    (!beta.contains(to_left)).then_some(Rule::Beta)
                }
            }
            ProblemKind::IntervalConstrainedCut(cs) => {
                let c = &cs[v];
                if on_left {
                    if !c.left_inner.contains(to_left) {
                        Some(Rule::LeftInner)
                    } else if !c.left_cross.contains(to_right) {
                        Some(Rule::LeftCross)
                    } else {
                        None
                    }
                } else if !c.right_inner.contains(to_right) {
                    Some(Rule::RightInner)
                } else if !c.right_cross.contains(to_left) {
                    Some(Rule::RightCross)
                } else {
                    None
                }
            }
        };
        if let Some(rule) = broken {
            return Some((v, rule));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, VertexSet};

    fn cut(n: usize, left: &[usize]) -> Cut {
        Cut::from_left(n, left.iter().map(|v| v - 1).collect())
    }

    #[test]
    fn two_edges_internal() {
        let g = parse_graph("4 2\n1 2\n3 4").unwrap();
        assert!(validate_cut(&g, &ProblemSpec::internal(), &cut(4, &[1, 2])).is_feasible());
        assert_eq!(
            validate_cut(&g, &ProblemSpec::internal(), &cut(4, &[1, 3])),
            Verdict::Violation { vertex: 0, rule: Rule::OwnSideMajority }
        );
    }

    #[test]
    fn k4_has_no_matching_cut_split() {
        let g = parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap();
        assert_eq!(
            validate_cut(&g, &ProblemSpec::dcut(1), &cut(4, &[1, 2])),
            Verdict::Violation { vertex: 0, rule: Rule::CrossDegree }
        );
    }

    #[test]
    fn c4_matching_cut() {
        let g = parse_graph("4 4\n1 2\n2 3\n3 4\n4 1").unwrap();
        let c = cut(4, &[1, 2]);
        for v in 0..4 {
            let other = if c.left.contains(v) { c.right } else { c.left };
            assert_eq!(g.neighbor_count(v, other), 1);
        }
        assert!(validate_cut(&g, &ProblemSpec::dcut(1), &c).is_feasible());
    }

    #[test]
    fn improper_and_malformed() {
        let g = Graph::empty(3).unwrap();
        let spec = ProblemSpec::internal();
        assert_eq!(validate_cut(&g, &spec, &Cut::from_left(3, VertexSet::EMPTY)), Verdict::Improper);
        assert_eq!(validate_cut(&g, &spec, &Cut::from_left(3, g.vertices())), Verdict::Improper);
        let overlapping = Cut { left: VertexSet::from_bits(0b011), right: VertexSet::from_bits(0b110) };
        assert_eq!(validate_cut(&g, &spec, &overlapping), Verdict::NotAPartition);
    }

    #[test]
    fn size_target() {
        let g = Graph::empty(4).unwrap();
        let spec = ProblemSpec::internal().with_size(2);
        assert!(validate_cut(&g, &spec, &cut(4, &[1, 4])).is_feasible());
        assert_eq!(validate_cut(&g, &spec, &cut(4, &[1])), Verdict::WrongSize { left: 1, target: 2 });
    }

    use crate::problem::Interval;
    use crate::graph::Graph;

    #[test]
    fn domination_rules() {
        // K3: alpha = [0,0] forces an independent left side
        let g = parse_graph("3 3\n1 2\n2 3\n1 3").unwrap();
        let spec = ProblemSpec::abdom(Interval::new(0, 0).unwrap(), Interval::new(0, 3).unwrap());
        assert!(validate_cut(&g, &spec, &cut(3, &[2])).is_feasible());
        assert_eq!(
            validate_cut(&g, &spec, &cut(3, &[1, 2])),
            Verdict::Violation { vertex: 0, rule: Rule::Alpha }
        );
        let dom = ProblemSpec::abdom(Interval::new(0, 3).unwrap(), Interval::new(2, 3).unwrap());
        assert_eq!(
            validate_cut(&g, &dom, &cut(3, &[1])),
            Verdict::Violation { vertex: 1, rule: Rule::Beta }
        );
    }
}
