use antimatch_core::{random_stable, random_weighted, InstanceShape, LeftSet, ProposalOrder};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn deferred_acceptance(c: &mut Criterion) {
    let mut group = c.benchmark_group("deferred_acceptance");
    for n in [8, 32, 128] {
        let inst = random_stable(&InstanceShape::new(n, n), 1);
        let all = LeftSet::full(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| {
                inst.deferred_acceptance(black_box(&all), ProposalOrder::Fifo)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn max_weight(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_weight_matching");
    for n in [8, 16, 32, 48] {
        let inst = random_weighted(&InstanceShape::new(n, n), 1);
        let all = LeftSet::full(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| inst.max_weight_matching(black_box(&all)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let inst = random_weighted(&InstanceShape::new(5, 5), 1);
    let all = LeftSet::full(5);
    c.bench_function("oracle_max_weight/5x5", |b| {
        b.iter(|| inst.oracle_max_weight(black_box(&all), 64).unwrap())
    });
}

criterion_group!(benches, deferred_acceptance, max_weight, oracle);
criterion_main!(benches);
