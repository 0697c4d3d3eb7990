//! Lattice-side benchmarks: short-vector enumeration and the Kneser
//! decomposition on the lattices the refutation pipeline visits.
//!
//! As with the sweep bench, run once with default features (parallel) and
//! once with `--no-default-features` (sequential) to compare the two
//! execution modes on identical inputs.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quinary::lattices::{decompose, dn_plus, kissing_number, theta_series};

fn enumeration(c: &mut Criterion) {
    let d12p = dn_plus(12).unwrap();
    let sum = d12p.direct_sum(&d12p);
    let mut group = c.benchmark_group("short_vectors");
    group.bench_function("kissing_d12plus", |b| {
        b.iter(|| black_box(kissing_number(black_box(&d12p)).unwrap()))
    });
    group.bench_function("theta4_d12plus", |b| {
        b.iter(|| black_box(theta_series(black_box(&d12p), 4).unwrap()))
    });
    group.sample_size(10);
    group.bench_function("kissing_d12plus_sum", |b| {
        b.iter(|| black_box(kissing_number(black_box(&sum)).unwrap()))
    });
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let d12p = dn_plus(12).unwrap();
    let sum = d12p.direct_sum(&d12p);
    let mut group = c.benchmark_group("decompose");
    group.sample_size(10);
    group.bench_function("d12plus_sum", |b| {
        b.iter(|| black_box(decompose(black_box(&sum)).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, enumeration, decomposition);
criterion_main!(benches);
