use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subquad_core::closure::{bitmatrix_closure, gk_closure, hybrid_closure, DEFAULT_OMEGA};
use subquad_core::harness::BenchFamily;
use subquad_core::rng::Rng;

fn closure(c: &mut Criterion) {
    for family in [BenchFamily::Sparse, BenchFamily::Dense] {
        let mut group = c.benchmark_group(format!("closure/{}", family.name()));
        let sizes: &[usize] = match family {
            BenchFamily::Dense => &[256, 512, 1024],
            _ => &[1024, 4096, 16384],
        };
        for &n in sizes {
            let g = family.build(n, &mut Rng::new(n as u64));
            group.bench_with_input(BenchmarkId::new("gk", n), &g, |b, g| b.iter(|| gk_closure(black_box(g)).unwrap()));
            group.bench_with_input(BenchmarkId::new("matrix", n), &g, |b, g| {
                b.iter(|| bitmatrix_closure(black_box(g)).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("hybrid", n), &g, |b, g| {
                b.iter(|| hybrid_closure(black_box(g), DEFAULT_OMEGA).unwrap())
            });
        }
        group.finish();
    }
}

criterion_group!(benches, closure);
criterion_main!(benches);
