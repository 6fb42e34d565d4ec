use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use affine_subroots::classification::{finite_table, instantiate_all};
use affine_subroots::{affine_table, enumerate_closed, ChainConfig, InstanceGrid};
use affine_subroots_bench::label;

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("tables");
    for f in ["E8", "B8"] {
        group.bench_function(BenchmarkId::new("finite", f), |b| b.iter(|| finite_table(f.parse().unwrap()).unwrap()));
    }
    for a in ["E6^1", "E6^2", "D6^2"] {
        group.bench_function(BenchmarkId::new("affine", a), |b| b.iter(|| affine_table(label(a)).unwrap()));
    }
    group.finish();
}

fn bench_instances(c: &mut Criterion) {
    let mut group = c.benchmark_group("instantiate_all");
    for a in ["B3^1", "E6^2"] {
        group.bench_function(a, |b| b.iter(|| instantiate_all(label(a), &InstanceGrid::full(5, 64)).unwrap().len()));
    }
    group.finish();
}

fn bench_chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_closed");
    group.sample_size(10);
    let cfg = ChainConfig { max_depth: 3, prime_bound: 3, exhaustive: true, certify: false };
    group.bench_function("G2^1 depth 3", |b| b.iter(|| enumerate_closed(label("G2^1"), &cfg).unwrap().len()));
    group.finish();
}

criterion_group!(benches, bench_tables, bench_instances, bench_chains);
criterion_main!(benches);
