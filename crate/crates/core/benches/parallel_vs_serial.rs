use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use isofact::explore::{betti_divisible_up_to, enumerate_numerical_by_genus, run_theorem_harness};
use isofact::Exec;

const MODES: [(&str, Exec); 2] = [("serial", Exec::Sequential), ("parallel", Exec::Parallel)];

fn harness(c: &mut Criterion) {
    let corpus = enumerate_numerical_by_genus(10, Exec::Parallel).unwrap();
    let mut g = c.benchmark_group("theorem_harness_genus_10");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| run_theorem_harness(&corpus, exec)));
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_genus_18");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| enumerate_numerical_by_genus(18, exec).unwrap()));
    }
    g.finish();
}

fn divisible_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("betti_divisible_f_600");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| betti_divisible_up_to(4, 600, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, harness, enumeration, divisible_search);
criterion_main!(benches);
