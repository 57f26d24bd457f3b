#![allow(dead_code)]

use rand::Rng;
use splitcut::{Graph, Interval, ProblemSpec, VertexConstraints};

pub const EDGE_PROBS: [f64; 3] = [0.2, 0.5, 0.8];

pub fn random_interval<R: Rng>(rng: &mut R, n: usize) -> Interval {
    let a = rng.gen_range(0..=n);
    let b = rng.gen_range(0..=n);
    Interval::new(a.min(b), a.max(b)).unwrap()
}

/// Intervals skewed towards being loose, so a fair share of instances are
/// feasible.
pub fn loose_interval<R: Rng>(rng: &mut R, n: usize) -> Interval {
    match rng.gen_range(0..4) {
        0 => Interval::full(n),
        1 => Interval::new(0, rng.gen_range(0..=n)).unwrap(),
        2 => Interval::new(rng.gen_range(0..=n.min(2)), n).unwrap(),
        _ => random_interval(rng, n),
    }
}

pub fn random_icc<R: Rng>(rng: &mut R, n: usize) -> Vec<VertexConstraints> {
    (0..n)
        .map(|_| VertexConstraints {
            left_inner: loose_interval(rng, n),
            left_cross: loose_interval(rng, n),
            right_inner: loose_interval(rng, n),
            right_cross: loose_interval(rng, n),
        })
        .collect()
}

/// Cycles through d-Cut (d = 0, 1, 2), Internal Partition, (α, β)-Domination
/// and random interval constraints.
pub fn spec_for<R: Rng>(rng: &mut R, n: usize, which: usize) -> ProblemSpec {
    match which % 6 {
        0 => ProblemSpec::dcut(0),
        1 => ProblemSpec::dcut(1),
        2 => ProblemSpec::dcut(2.min(n)),
        3 => ProblemSpec::internal(),
        4 => ProblemSpec::abdom(loose_interval(rng, n), loose_interval(rng, n)),
        _ => ProblemSpec::icc(random_icc(rng, n)),
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    Graph::random(n, p, rng).unwrap()
}
