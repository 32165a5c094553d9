//! Compares the rayon-parallel batch sweeps against their sequential
//! fallbacks. The `parallel` feature (default) routes library sweeps through
//! rayon; building with `--no-default-features` makes the same entry points
//! run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use frt_core::verify;

fn bench_logterm_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("logterm_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(verify::sweep_logterm_parallel()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(verify::sweep_logterm_sequential()))
    });
    group.finish();
}

fn bench_h2_oracle_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("h2_oracle_batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(verify::sweep_h2_parallel(32)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(verify::sweep_h2_sequential(32)))
    });
    group.finish();
}

criterion_group!(benches, bench_logterm_sweep, bench_h2_oracle_batch);
criterion_main!(benches);
