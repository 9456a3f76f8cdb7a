//! Criterion benches: blockwise assembly against the dense kernels on
//! chain-of-blocks matrices, and the rayon split against the sequential
//! walk for the two data-parallel hot spots (Ryser's subset loop and the
//! summand cache fill).
//!
//! Build with `--no-default-features` to bench the fully sequential
//! configuration; the `*_seq` entries are then identical code paths.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use blockdet::blockcompute::{build_cache, build_cache_seq, det_blockwise, per_blockwise};
use blockdet::blocks::decompose_matrix;
use blockdet::generator::{generate, Attachment, GenSpec};
use blockdet::kernels::{det_bareiss, per_ryser, per_ryser_seq};
use blockdet::Matrix;

fn chain(blocks: usize, size: usize, seed: u64) -> Matrix {
    let spec = GenSpec {
        loop_policy: 0.6,
        density: 0.5,
        ..GenSpec::new(vec![size; blocks], Attachment::Chain, seed)
    };
    generate(&spec).expect("bench spec is feasible").0
}

fn bench_det_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    // few large blocks: the regime where per-block kernels dominate and the
    // partition-enumeration overhead stays negligible
    for (blocks, size) in [(5, 6), (5, 11), (5, 21)] {
        let m = chain(blocks, size, 17);
        let n = m.order();
        group.bench_with_input(BenchmarkId::new("blockwise", n), &m, |b, m| {
            b.iter(|| black_box(det_blockwise(m)))
        });
        group.bench_with_input(BenchmarkId::new("dense", n), &m, |b, m| {
            b.iter(|| black_box(det_bareiss(m)))
        });
    }
    group.finish();
}

fn bench_per_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("per");
    group.sample_size(10);
    for (blocks, size) in [(4, 5), (4, 6), (5, 6)] {
        let m = chain(blocks, size, 23);
        let n = m.order();
        group.bench_with_input(BenchmarkId::new("blockwise", n), &m, |b, m| {
            b.iter(|| black_box(per_blockwise(m).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("dense", n), &m, |b, m| {
            b.iter(|| black_box(per_ryser(m).unwrap()))
        });
    }
    group.finish();
}

fn bench_parallel_vs_sequential(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel");
    group.sample_size(10);

    let dense = chain(1, 20, 31);
    group.bench_function("ryser/n20", |b| {
        b.iter(|| black_box(per_ryser(&dense).unwrap()))
    });
    group.bench_function("ryser_seq/n20", |b| {
        b.iter(|| black_box(per_ryser_seq(&dense).unwrap()))
    });

    let m = chain(4, 12, 37);
    let d = decompose_matrix(&m);
    group.bench_function("cache_fill/4x12", |b| {
        b.iter(|| black_box(build_cache(&m, &d).unwrap()))
    });
    group.bench_function("cache_fill_seq/4x12", |b| {
        b.iter(|| black_box(build_cache_seq(&m, &d).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_det_methods,
    bench_per_methods,
    bench_parallel_vs_sequential
);
criterion_main!(benches);
