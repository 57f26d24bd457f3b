use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use splitcut::{DominanceIndex, IndexParams};
use splitcut_bench::{points, queries};

fn batch_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_count");
    group.sample_size(10);
    for &(len, dim) in &[(4096, 8), (16384, 16), (16384, 64)] {
        let qs = queries(len, dim, 20, 2);
        for (name, params) in [("naive", IndexParams::naive()), ("recursive", IndexParams::default())] {
            let index = DominanceIndex::build(points(len, dim, 20, 1), params).unwrap();
            group.bench_with_input(BenchmarkId::new(name, format!("{len}x{dim}")), &qs, |b, qs| {
                b.iter(|| index.batch_count(qs).unwrap())
            });
        }
    }
    group.finish();
}

fn leaf_threshold(c: &mut Criterion) {
    let mut group = c.benchmark_group("leaf_threshold");
    group.sample_size(10);
    let qs = queries(16384, 16, 20, 4);
    for leaf in [4, 32, 256] {
        let index = DominanceIndex::build(points(16384, 16, 20, 3), IndexParams::recursive(leaf)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(leaf), &qs, |b, qs| b.iter(|| index.batch_count(qs).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, batch_count, leaf_threshold);
criterion_main!(benches);
