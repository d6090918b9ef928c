use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use txc_bench::{default_graph, optimize_spec, window};
use txc_core::{run_otcd, run_otcd_star, run_tcd, run_tcd_star, run_txcq, TcqOptions};

fn enumeration(c: &mut Criterion) {
    let g = default_graph();
    let opts = TcqOptions::default();
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for span in [20i64, 50] {
        let w = window(&g, span);
        group.bench_with_input(BenchmarkId::new("tcd", span), &w, |b, &w| {
            b.iter(|| run_tcd(&g, 3, w, &opts).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("otcd", span), &w, |b, &w| {
            b.iter(|| run_otcd(&g, 3, w, &opts).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("otcd-star", span), &w, |b, &w| {
            b.iter(|| run_otcd_star(&g, 3, w, &opts).unwrap())
        });
    }
    group.finish();
}

fn optimize(c: &mut Criterion) {
    let g = default_graph();
    let w = window(&g, 30);
    let mut group = c.benchmark_group("optimize");
    group.sample_size(10);
    for measure in ["size", "frequency", "persistence", "engagement"] {
        let spec = optimize_spec(3, w, measure);
        group.bench_with_input(BenchmarkId::new("otcd-star", measure), &spec, |b, s| {
            b.iter(|| run_txcq(&g, s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("tcd-star", measure), &spec, |b, s| {
            b.iter(|| run_tcd_star(&g, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, optimize);
criterion_main!(benches);
