use binsum_bench::{oracle_instances, FACTOR_INPUTS};
use binsum_core::experiments::{scan_density, NRange};
use binsum_core::integrality::{classify, s_lower, s_upper_closed};
use binsum_core::ntkernel::{factorize, is_prime, order2};
use binsum_core::{ClassifyBudget, Instance};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_lower");
    group.sample_size(10);
    for inst in oracle_instances(23) {
        group.bench_with_input(BenchmarkId::from_parameter(inst.n()), &inst, |b, inst| {
            b.iter(|| s_lower(black_box(inst)).unwrap())
        });
    }
    group.finish();

    let inst = Instance::new(25, 100).unwrap();
    c.bench_function("s_upper_closed r=25 n=100", |b| b.iter(|| s_upper_closed(black_box(&inst)).unwrap()));
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorize");
    for m in FACTOR_INPUTS {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| factorize(black_box(m)).unwrap()));
    }
    group.finish();

    c.bench_function("is_prime 2^64-59", |b| b.iter(|| is_prime(black_box(18_446_744_073_709_551_557))));
    c.bench_function("order2 1000003", |b| b.iter(|| order2(black_box(1_000_003)).unwrap()));
}

fn classification(c: &mut Criterion) {
    let budget = ClassifyBudget::default();
    let inst = Instance::new(23, 1_000_000).unwrap();
    c.bench_function("classify r=23 n=10^6", |b| b.iter(|| classify(black_box(&inst), &budget)));

    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("r=23 n<=10^4", |b| {
        b.iter(|| scan_density(23, NRange::new(1, 10_000).unwrap(), &budget).unwrap())
    });
    group.finish();
}

criterion_group!(benches, oracle, kernel, classification);
criterion_main!(benches);
