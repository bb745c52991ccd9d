use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qpower::simulate::{estimate_qbar, SimConfig};
use qpower::{q_star, q_star_allocation, semivalue, shapley, RescalingFamily};
use qpower_bench::{explicit, ladder, majority};

fn collective(c: &mut Criterion) {
    let mut group = c.benchmark_group("q_star");
    for n in [8, 12, 16] {
        let row = RescalingFamily::uniform().row(n).unwrap();
        let weighted = ladder(n);
        let table = explicit(&weighted);
        group.bench_with_input(BenchmarkId::new("weighted", n), &n, |b, _| {
            b.iter(|| q_star(&weighted, &row).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("explicit", n), &n, |b, _| {
            b.iter(|| q_star(&table, &row).unwrap())
        });
    }
    group.finish();
}

fn individual(c: &mut Criterion) {
    let mut group = c.benchmark_group("individual");
    for n in [8, 12] {
        let game = ladder(n);
        let row = RescalingFamily::shapley().row(n).unwrap();
        group.bench_with_input(BenchmarkId::new("q_star_allocation", n), &n, |b, _| {
            b.iter(|| q_star_allocation(&game, &row).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("semivalue", n), &n, |b, _| {
            b.iter(|| semivalue(&game, &row).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("shapley", n), &n, |b, _| {
            b.iter(|| shapley(&game).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let game = majority(9);
    let mut group = c.benchmark_group("estimate_qbar");
    group.sample_size(10);
    for workers in [1, 4] {
        let cfg = SimConfig::new(100_000, 1).with_workers(workers);
        group.bench_with_input(BenchmarkId::new("workers", workers), &cfg, |b, cfg| {
            b.iter(|| estimate_qbar(&game, cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, collective, individual, simulation);
criterion_main!(benches);
