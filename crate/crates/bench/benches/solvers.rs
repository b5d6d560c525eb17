use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use insideness_core::generators::{generate, Family, GeneratorParams};
use insideness_core::{
    flood_fill_outside, ray_parity_insideness, BinaryImage, PreparedSolver, Solver,
};

fn curve(family: &str, seed: u64) -> BinaryImage {
    let f: Family = family.parse().expect("known family");
    generate(&GeneratorParams::new(f, seed))
        .expect("generates")
        .into_image()
}

fn oracles(c: &mut Criterion) {
    let img = curve("spiral", 1);
    c.bench_function("flood_fill 42x42", |b| {
        b.iter(|| flood_fill_outside(black_box(&img)))
    });
    c.bench_function("ray_parity 42x42", |b| {
        b.iter(|| ray_parity_insideness(black_box(&img)))
    });
}

fn networks(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    group.sample_size(20);
    let img = curve("digs", 2);
    for s in [
        Solver::RayNet,
        Solver::DilatedNet,
        Solver::Rnn,
        Solver::ConvLstm,
        Solver::Stacked,
    ] {
        let prepared = PreparedSolver::new(s, img.height()).expect("builds");
        group.bench_with_input(BenchmarkId::new(s.name(), "digs 42x42"), &img, |b, img| {
            b.iter(|| prepared.run(black_box(img)).expect("runs"))
        });
    }
    group.finish();
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for family in ["polar24", "spiral", "digs", "random-walk"] {
        let f: Family = family.parse().expect("known family");
        let mut seed = 0u64;
        group.bench_function(family, |b| {
            b.iter(|| {
                seed += 1;
                generate(&GeneratorParams::new(f, seed)).expect("generates")
            })
        });
    }
    group.finish();
}

criterion_group!(benches, oracles, networks, generators);
criterion_main!(benches);
