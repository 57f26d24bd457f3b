//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitcut::{Graph, PointSet, Vectors};

pub fn graph(n: usize, p: f64, seed: u64) -> Graph {
    Graph::random(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).expect("n within the vertex limit")
}

/// `len` points with coordinates drawn uniformly from `-spread..=spread`.
pub fn points(len: usize, dim: usize, spread: i32, seed: u64) -> PointSet<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = PointSet::with_capacity(dim, len).expect("positive dimension");
    for id in 0..len as u64 {
        set.push_with(id, 0, |row| row.iter_mut().for_each(|x| *x = rng.gen_range(-spread..=spread)));
    }
    set
}

pub fn queries(len: usize, dim: usize, spread: i32, seed: u64) -> Vectors<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut qs = Vectors::with_capacity(dim, len).expect("positive dimension");
    for _ in 0..len {
        qs.push_with(0, |row| row.iter_mut().for_each(|x| *x = rng.gen_range(-spread..=spread)));
    }
    qs
}
