//! Compares the data-parallel sweeps against sequential execution.
//!
//! With the default `parallel` feature the "rayon" benchmarks use the global
//! pool and "single_thread_pool" forces the same code onto one worker; build
//! with `--no-default-features` to measure the sequential fallback itself.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cousin_core::cousin::{local_cohomology, local_cohomology_oracle, OracleBudget};
use cousin_core::dyck::{enumerate_patterns, BulletFilter, PatternFilter};
use cousin_core::young::{parse_partition, GrassContext};

fn oracle_sweep(ctx: &GrassContext, budget: &OracleBudget) -> usize {
    let mut factors = 0;
    for a in ctx.partitions() {
        let formula = local_cohomology(ctx, &a).unwrap();
        let oracle = local_cohomology_oracle(ctx, &a, budget).unwrap();
        assert_eq!(formula, oracle);
        factors += formula.values().map(|m| m.factor_count()).sum::<usize>();
    }
    factors
}

fn enumerate_5422() -> usize {
    let a = parse_partition("5,4,2,2").unwrap();
    enumerate_patterns(
        &a,
        &PatternFilter {
            min_path_len: 3,
            bullets: BulletFilter::Any,
            path_count: None,
        },
    )
    .len()
}

fn bench_oracle_sweep(c: &mut Criterion) {
    let ctx = GrassContext::new(2, 6).unwrap();
    let budget = OracleBudget::default();
    let mut group = c.benchmark_group("oracle_sweep_gr26");
    group.sample_size(20);
    #[cfg(feature = "parallel")]
    {
        group.bench_function("rayon", |b| {
            b.iter(|| oracle_sweep(black_box(&ctx), &budget))
        });
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("single_thread_pool", |b| {
            b.iter(|| pool.install(|| oracle_sweep(black_box(&ctx), &budget)))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| {
        b.iter(|| oracle_sweep(black_box(&ctx), &budget))
    });
    group.finish();
}

fn bench_pattern_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("patterns_5422");
    group.sample_size(20);
    #[cfg(feature = "parallel")]
    {
        group.bench_function("rayon", |b| b.iter(|| black_box(enumerate_5422())));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("single_thread_pool", |b| {
            b.iter(|| pool.install(|| black_box(enumerate_5422())))
        });
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential", |b| b.iter(|| black_box(enumerate_5422())));
    group.finish();
}

criterion_group!(benches, bench_oracle_sweep, bench_pattern_enumeration);
criterion_main!(benches);
