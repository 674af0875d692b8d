use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subquad_core::closure::{closure_of_general_digraph, is_transitive};
use subquad_core::comparability::is_comparability;
use subquad_core::graph::UndirectedGraph;
use subquad_core::harness::{random_dag, random_digraph};
use subquad_core::rng::Rng;

/// Comparability graph of a random DAG's closure: always recognizable, so
/// the whole forcing pass runs.
fn comparability_input(n: usize, r: &mut Rng) -> UndirectedGraph {
    let d = closure_of_general_digraph(&random_dag(n, 4.0 / n as f64, r)).closure;
    UndirectedGraph::from_edges(n, d.edges().map(|(u, v)| (u.min(v), u.max(v)))).unwrap()
}

fn recognition(c: &mut Criterion) {
    let mut group = c.benchmark_group("recognition");
    for n in [100, 200, 400] {
        let mut r = Rng::new(n as u64);
        let g = comparability_input(n, &mut r);
        group.bench_with_input(BenchmarkId::new("comparability", n), &g, |b, g| {
            b.iter(|| is_comparability(black_box(g)))
        });
        let t = closure_of_general_digraph(&random_digraph(n, 2.0 / n as f64, &mut r)).closure;
        group.bench_with_input(BenchmarkId::new("transitive", n), &t, |b, t| b.iter(|| is_transitive(black_box(t))));
    }
    group.finish();
}

criterion_group!(benches, recognition);
criterion_main!(benches);
