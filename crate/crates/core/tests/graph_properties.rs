mod common;

use proptest::prelude::*;

use common::{closure_edges_oracle, comparability_oracle, reachability, transitivity_oracle, validates_witness};
use subquad_core::closure::{
    bitmatrix_closure, closure_of_general_digraph, gk_closure, hybrid_closure, is_transitive,
};
use subquad_core::comparability::{check_certificate, is_comparability};
use subquad_core::graph::{condense_scc, topological_order, DirectedGraph, UndirectedGraph};
use subquad_core::io::{parse_directed, parse_undirected, write_directed, write_undirected};

/// DAG on a random hidden order so ids are not topological.
fn dag() -> impl Strategy<Value = DirectedGraph> {
    (1usize..48)
        .prop_flat_map(|n| {
            let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (Just(n), order, prop::collection::vec((0..n, 0..n), 0..4 * n))
        })
        .prop_map(|(n, order, pairs)| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (order[a.min(b)], order[a.max(b)]))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            DirectedGraph::from_edges(n, edges).unwrap()
        })
}

fn digraph(max_n: usize, loops: bool) -> impl Strategy<Value = DirectedGraph> {
    (1..max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..3 * n)))
        .prop_map(move |(n, pairs)| {
            let mut edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| loops || a != b).collect();
            edges.sort_unstable();
            edges.dedup();
            if loops {
                DirectedGraph::from_edges_with_loops(n, edges).unwrap()
            } else {
                DirectedGraph::from_edges(n, edges).unwrap()
            }
        })
}

fn graph(max_n: usize, max_m: usize) -> impl Strategy<Value = UndirectedGraph> {
    (1..max_n)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..max_m)))
        .prop_map(|(n, pairs)| {
            let edges = pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b)));
            UndirectedGraph::from_edges_dedup(n, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn dag_closures_match_reachability(g in dag(), omega in 2.01f64..=3.0) {
        let want = closure_edges_oracle(&g);
        for r in [gk_closure(&g).unwrap(), bitmatrix_closure(&g).unwrap(), hybrid_closure(&g, omega).unwrap()] {
            let got: Vec<_> = r.closure.edges().collect();
            prop_assert_eq!(&got, &want);
            prop_assert_eq!(r.closure_edges, want.len());
            prop_assert_eq!(r.input_edges, g.edge_count());
            prop_assert!(is_transitive(&r.closure).transitive);
        }
    }

    #[test]
    fn sweep_work_within_cost_bounds(g in dag()) {
        let r = gk_closure(&g).unwrap();
        let n = g.vertex_count();
        let p = r.profile;
        prop_assert!(p.small_set_work as f64 <= p.small_bound(n, g.edge_count()) + 1e-9);
        prop_assert!(p.large_set_work as f64 <= p.large_bound(n, r.closure_edges) + 1e-9);
        prop_assert_eq!(p.small_set_work + p.large_set_work, r.work_counter);
    }

    #[test]
    fn general_closure_matches_reachability(g in digraph(30, true)) {
        let got: Vec<_> = closure_of_general_digraph(&g).closure.edges().collect();
        prop_assert_eq!(got, closure_edges_oracle(&g));
    }

    #[test]
    fn condensation_groups_mutually_reachable_vertices(g in digraph(30, false)) {
        let c = condense_scc(&g);
        let r = reachability(&g);
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let same = u == v || (r[u][v] && r[v][u]);
                prop_assert_eq!(c.component_of[u] == c.component_of[v], same);
            }
        }
        prop_assert!(topological_order(&c.dag).is_ok());
        for (u, v) in g.edges() {
            let (a, b) = (c.component_of[u], c.component_of[v]);
            prop_assert!(a == b || c.dag.has_edge(a, b));
        }
    }

    #[test]
    fn topological_order_respects_edges(g in dag()) {
        let t = topological_order(&g).unwrap();
        for (u, v) in g.edges() {
            prop_assert!(t.rank(u) < t.rank(v));
        }
    }

    #[test]
    fn transitivity_matches_triple_scan(g in digraph(14, true)) {
        let c = is_transitive(&g);
        let oracle = transitivity_oracle(&g);
        prop_assert_eq!(c.transitive, oracle.is_none());
        if let Some(w) = c.witness {
            prop_assert!(validates_witness(&g, w));
        }
    }

    #[test]
    fn comparability_matches_exhaustive_search(g in graph(9, 13)) {
        let v = is_comparability(&g);
        prop_assert_eq!(v.is_comparability, comparability_oracle(&g));
        prop_assert!(check_certificate(&g, &v).is_ok());
    }

    #[test]
    fn graph_text_round_trips(g in digraph(20, true), u in graph(20, 40)) {
        let back = parse_directed(&write_directed(&g)).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert!(back.edges().eq(g.edges()));
        prop_assert_eq!(parse_undirected(&write_undirected(&u)).unwrap(), u);
    }
}

/// Dense random digraphs are almost never transitive, so closures of random
/// graphs supply the positive side.
#[test]
fn closures_are_transitive_and_witnesses_validate() {
    let mut r = subquad_core::rng::Rng::new(77);
    for _ in 0..200 {
        let n = r.range(2, 25);
        let g = subquad_core::harness::random_digraph(n, 0.1, &mut r);
        let c = closure_of_general_digraph(&g).closure;
        assert!(is_transitive(&c).transitive);
        assert_eq!(transitivity_oracle(&c), None);
        if let Some(w) = is_transitive(&g).witness {
            assert!(validates_witness(&g, w));
        }
    }
}
