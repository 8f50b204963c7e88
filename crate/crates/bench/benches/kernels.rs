use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcgrass::{reduce_iterative, wedge, CouplingMatrix, ReduceOptions, DEFAULT_RANK_TOL};
use pcgrass_bench::{matrix, vector};

fn bench_indices(c: &mut Criterion) {
    let mut group = c.benchmark_group("algebraic_inconsistency");
    for n in [8, 32, 128] {
        let a = matrix(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| black_box(a).algebraic_inconsistency())
        });
    }
    group.finish();
}

fn bench_plucker(c: &mut Criterion) {
    let mut group = c.benchmark_group("plucker_residuals");
    for n in [8, 16, 32] {
        let p = wedge(&vector(n, 1), &vector(n, 2)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| black_box(p).plucker_residuals().max_abs())
        });
    }
    group.finish();
}

fn bench_coupling(c: &mut Criterion) {
    let mut group = c.benchmark_group("coupling");
    for n in [6, 10, 14] {
        group.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| {
            b.iter(|| CouplingMatrix::build(black_box(n)).unwrap())
        });
        let m = CouplingMatrix::build(n).unwrap();
        group.bench_with_input(BenchmarkId::new("diagnose", n), &m, |b, m| {
            b.iter(|| m.diagnose(DEFAULT_RANK_TOL).unwrap().rank)
        });
    }
    group.finish();
}

fn bench_reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_iterative");
    for n in [8, 32, 64] {
        let a = matrix(n, 3);
        let opts = ReduceOptions { eta: Some(0.5 / n as f64), ..Default::default() };
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| reduce_iterative(black_box(a), &opts).unwrap().iterations())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_indices, bench_plucker, bench_coupling, bench_reduce);
criterion_main!(benches);
