use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sparsedtw_bench::{lineup, pair};
use sparsedtw_core::sparse_dtw;

fn algorithms(c: &mut Criterion) {
    let mut group = c.benchmark_group("algorithm");
    group.sample_size(10);
    for length in [250, 1000] {
        let (s, q) = pair(length, 0.95, 1);
        for algo in lineup(length) {
            group.bench_with_input(
                BenchmarkId::new(algo.to_string(), length),
                &length,
                |b, _| b.iter(|| algo.run(black_box(&s), black_box(&q), usize::MAX).unwrap()),
            );
        }
    }
    group.finish();
}

fn resolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("sparse_resolution");
    group.sample_size(10);
    let (s, q) = pair(1000, 0.95, 2);
    for res in [0.05, 0.1, 0.25, 0.5, 1.0] {
        group.bench_with_input(BenchmarkId::from_parameter(res), &res, |b, &res| {
            b.iter(|| sparse_dtw(black_box(&s), black_box(&q), res).unwrap())
        });
    }
    group.finish();
}

fn correlation(c: &mut Criterion) {
    let mut group = c.benchmark_group("sparse_correlation");
    group.sample_size(10);
    for rho in [0.0, 0.5, 0.9, 0.99] {
        let (s, q) = pair(1000, rho, 3);
        group.bench_with_input(BenchmarkId::from_parameter(rho), &rho, |b, _| {
            b.iter(|| sparse_dtw(black_box(&s), black_box(&q), 0.5).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, algorithms, resolution, correlation);
criterion_main!(benches);
