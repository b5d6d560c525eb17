use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use insideness_core::enumeration::{
    count_grid_cycles, count_jordan_curves_exact, jordan_lower_bound,
};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    group.bench_function("grid cycles 4x4", |b| {
        b.iter(|| count_grid_cycles(black_box(4), 4))
    });
    group.bench_function("lower bound N=9", |b| {
        b.iter(|| jordan_lower_bound(black_box(9)))
    });
    group.bench_function("exact N=7", |b| {
        b.iter(|| count_jordan_curves_exact(black_box(7)))
    });
    group.bench_function("exact N=8", |b| {
        b.iter(|| count_jordan_curves_exact(black_box(8)))
    });
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
