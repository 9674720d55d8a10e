use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graphanon_bench::{random, social};
use graphanon_core::cascade::{run_cascade, CascadeConfig, CascadeLevels};
use graphanon_core::{canonical_form, equivalence_partition, MeasureKind};

fn partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition");
    group.sample_size(10);
    for n in [500, 2000] {
        let g = social(n);
        for d in [1, 2] {
            for m in MeasureKind::all(d) {
                if d == 2 && m == MeasureKind::degree() {
                    continue;
                }
                group.bench_with_input(BenchmarkId::new(m.to_string(), n), &g, |b, g| {
                    b.iter(|| equivalence_partition(black_box(g), m))
                });
            }
        }
    }
    group.finish();
}

fn canonical_labels(c: &mut Criterion) {
    let g = random(400, 8.0);
    let hoods: Vec<_> = (0..50).map(|v| g.neighborhood(v, 2)).collect();
    c.bench_function("canonical_form/gnp400_d2_x50", |b| {
        b.iter(|| {
            for h in &hoods {
                black_box(canonical_form(h).unwrap());
            }
        })
    });
}

fn cascade(c: &mut Criterion) {
    let g = social(2000);
    let cfg = CascadeConfig {
        initial: MeasureKind::vrq(1),
        cascading: MeasureKind::degree(),
        max_levels: CascadeLevels::Fixpoint,
    };
    c.bench_function("cascade/ba2000_vrq1_degree", |b| {
        b.iter(|| run_cascade(black_box(&g), &cfg).unwrap())
    });
}

criterion_group!(benches, partitions, canonical_labels, cascade);
criterion_main!(benches);
