use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use splitcut::{count_solutions, solve, IndexParams, Mode, ProblemSpec, SolverConfig, SolverEngine};
use splitcut_bench::graph;

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_dcut1");
    group.sample_size(10);
    let spec = ProblemSpec::dcut(1);
    for n in [16, 20, 24] {
        let g = graph(n, 0.3, n as u64);
        for engine in [SolverEngine::SplitList, SolverEngine::Brute] {
            let cfg = SolverConfig { engine, ..SolverConfig::no_delegation() };
            group.bench_with_input(BenchmarkId::new(engine.name(), n), &g, |b, g| {
                b.iter(|| count_solutions(g, &spec, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn pruning(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_n30");
    group.sample_size(10);
    let g = graph(30, 0.5, 0xC7);
    let spec = ProblemSpec::dcut(1).with_mode(Mode::Decide);
    for (name, cfg) in [
        ("pruned", SolverConfig::default()),
        ("unpruned", SolverConfig { prune: false, ..SolverConfig::default() }),
        ("naive_index", SolverConfig { index: IndexParams::naive(), ..SolverConfig::default() }),
    ] {
        group.bench_function(name, |b| b.iter(|| solve(&g, &spec, &cfg).unwrap()));
    }
    group.finish();
}

fn problems(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_n22");
    group.sample_size(10);
    let g = graph(22, 0.3, 22);
    let cfg = SolverConfig::default();
    for spec in [ProblemSpec::internal(), ProblemSpec::dcut(2)] {
        group.bench_function(spec.kind.name(), |b| b.iter(|| count_solutions(&g, &spec, &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, engines, pruning, problems);
criterion_main!(benches);
