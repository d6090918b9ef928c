use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use txc_bench::{default_graph, full_window, window};
use txc_core::{Tel, TimeInterval};

fn tel_ops(c: &mut Criterion) {
    let g = default_graph();
    let full = full_window(&g);
    let tel = Tel::build(&g);

    c.bench_function("tel/build", |b| b.iter(|| Tel::build(black_box(&g))));
    c.bench_function("tel/clone", |b| b.iter(|| black_box(&tel).clone()));

    let inner = TimeInterval::new(full.ts() + 10, full.te() - 10).unwrap();
    c.bench_function("tel/truncate", |b| {
        b.iter_batched(
            || tel.clone(),
            |mut t| {
                t.truncate(inner);
                t
            },
            criterion::BatchSize::LargeInput,
        )
    });

    let mut group = c.benchmark_group("tel/decompose");
    for k in [2usize, 3, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter_batched(
                || tel.clone(),
                |mut t| {
                    t.decompose(k).unwrap();
                    t
                },
                criterion::BatchSize::LargeInput,
            )
        });
    }
    group.finish();

    let mut core = tel.clone();
    core.tcd(3, window(&g, 30)).unwrap();
    c.bench_function("tel/snapshot", |b| b.iter(|| black_box(&core).snapshot()));
}

criterion_group!(benches, tel_ops);
criterion_main!(benches);
