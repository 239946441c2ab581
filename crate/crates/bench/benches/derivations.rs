use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use modext_bench::{algebras, self_extensions};
use modext_core::structure::DEFAULT_SEED;
use modext_core::{
    blocks_of, check_block_conditions, derivation_space, is_simple_prime, radical, Bimodule,
};

fn der_self(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivation_space");
    for (name, a) in algebras() {
        let reg = Bimodule::regular(&a);
        group.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| {
            b.iter(|| derivation_space(black_box(a), &reg).unwrap().dim())
        });
    }
    group.finish();
}

fn der_extension(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivation_space_T");
    group.sample_size(10);
    for (name, t) in self_extensions() {
        let reg = Bimodule::regular(t.total());
        group.bench_function(name, |b| {
            b.iter(|| derivation_space(black_box(t.total()), &reg).unwrap().dim())
        });
    }
    group.finish();
}

fn block_conditions(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_block_conditions");
    for (name, t) in self_extensions() {
        let reg = Bimodule::regular(t.total());
        let basis = derivation_space(t.total(), &reg).unwrap().basis();
        let blocks = blocks_of(&t, &basis[0]).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| check_block_conditions(&t, black_box(&blocks)).unwrap().passed())
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure");
    for (name, a) in algebras() {
        group.bench_with_input(BenchmarkId::new("radical", name), &a, |b, a| {
            b.iter(|| radical(black_box(a)).radical.dim())
        });
        group.bench_with_input(BenchmarkId::new("simple", name), &a, |b, a| {
            b.iter(|| is_simple_prime(black_box(a), DEFAULT_SEED).attempts)
        });
    }
    group.finish();
}

criterion_group!(benches, der_self, der_extension, block_conditions, structure);
criterion_main!(benches);
