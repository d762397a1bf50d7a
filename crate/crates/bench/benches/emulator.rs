use addemu_core::distance::DistanceMatrix;
use addemu_core::emulator::{find_prefix_frontier_in, EmulatorEdges, Provenance};
use addemu_core::{
    build_emulator, cluster_decompose, generate, greedy_multiplicative_spanner, verify_emulator,
    EmulatorConfig, Graph,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const FAMILIES: [&str; 3] = ["er:512:0.02", "grid:24:24", "geo:400:0.08"];

fn graphs() -> Vec<(&'static str, Graph)> {
    FAMILIES.iter().map(|&s| (s, generate(s, 0).unwrap())).collect()
}

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_emulator");
    group.sample_size(10);
    let cfg = EmulatorConfig::default();
    for (spec, g) in graphs() {
        for levels in [1, 3] {
            group.bench_with_input(BenchmarkId::new(spec, levels), &g, |b, g| {
                b.iter(|| build_emulator(black_box(g), levels, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_emulator");
    group.sample_size(10);
    for (spec, g) in graphs() {
        let emu = build_emulator(&g, 2, &EmulatorConfig::default()).unwrap();
        let h = emu.graph();
        group.bench_function(spec, |b| {
            b.iter(|| verify_emulator(&g, black_box(&h), emu.error_bound(), Default::default()).unwrap())
        });
    }
    group.finish();
}

fn primitives(c: &mut Criterion) {
    let g = generate("er:1024:0.01", 0).unwrap();
    c.bench_function("spanner/er:1024", |b| {
        b.iter(|| greedy_multiplicative_spanner(black_box(&g), 19).unwrap())
    });
    c.bench_function("cluster_decompose/er:1024", |b| {
        b.iter(|| cluster_decompose(black_box(&g), 4, 0.25).unwrap())
    });

    let g = generate("cycle:512", 0).unwrap();
    let dist_g = DistanceMatrix::from_graph(&g);
    let mut h = EmulatorEdges::new(g.n());
    for i in 1..g.n() {
        h.insert(i - 1, i, 1, Provenance::Spanner);
    }
    let mut h = DistanceMatrix::from_weighted(&h.graph());
    let path: Vec<usize> = (0..g.n()).collect();
    c.bench_function("prefix_frontier/path:512", |b| {
        b.iter(|| find_prefix_frontier_in(black_box(&path), &dist_g, &mut h, 4))
    });
}

criterion_group!(benches, build, verify, primitives);
criterion_main!(benches);
