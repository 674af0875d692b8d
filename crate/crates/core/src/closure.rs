//! Transitive closure of DAGs and general digraphs, plus the transitivity
//! test used by comparability recognition.
//!
//! The main routine is the reverse-topological sweep: visiting vertices
//! from the sinks backwards, the reachable set of `v` is the union of its
//! out-neighbors and their (already finished) reachable sets. The cost of
//! each union is the size of the set being merged, and [`CostProfile`]
//! splits that total at the size threshold `n^alpha` so the two halves can
//! be compared with their analytic bounds.

use serde::Serialize;
use thiserror::Error;

use crate::bits::{iter_words, word_count, BitSet};
use crate::graph::{condense_scc, topological_order, DirectedGraph, GraphError};

/// Matrix multiplication exponent used when none is given.
pub const DEFAULT_OMEGA: f64 = 2.807;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosureError {
    #[error("input is not acyclic; cycle {0:?}")]
    CycleDetected(Vec<usize>),
    #[error("matrix multiplication exponent must lie in (2, 3], got {0}")]
    InvalidExponent(f64),
}

impl From<GraphError> for ClosureError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CycleDetected(c) => ClosureError::CycleDetected(c),
            other => unreachable!("closure routines only fail on cycles: {other}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureMethod {
    Gk,
    BitMatrix,
    Hybrid,
}

impl ClosureMethod {
    pub fn name(self) -> &'static str {
        match self {
            ClosureMethod::Gk => "gk",
            ClosureMethod::BitMatrix => "matrix",
            ClosureMethod::Hybrid => "hybrid",
        }
    }
}

/// Work of the sweep split at the set-size threshold `n^alpha`.
///
/// `small_set_work` sums the sizes of merged sets with at most `n^alpha`
/// elements; `large_set_work` sums the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostProfile {
    pub alpha: f64,
    pub small_set_work: u64,
    pub large_set_work: u64,
}

impl CostProfile {
    /// Bound on the small-set work: `input_edges * n^alpha`.
    pub fn small_bound(&self, n: usize, input_edges: usize) -> f64 {
        input_edges as f64 * (n as f64).powf(self.alpha)
    }

    /// Bound on the large-set work: `closure_edges^2 / n^(2 alpha - 1)`.
    /// Vertices with a large set number at most `closure_edges / n^alpha`,
    /// every edge between two of them merges at most `n` elements, and an
    /// edge into a large set starts at a large set.
    pub fn large_bound(&self, n: usize, closure_edges: usize) -> f64 {
        let n = n as f64;
        (closure_edges as f64).powi(2) / n.powf(2.0 * self.alpha - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureResult {
    pub closure: DirectedGraph,
    pub input_edges: usize,
    pub closure_edges: usize,
    pub method_used: ClosureMethod,
    /// Set-union work for the sweep, word operations for the matrix route.
    pub work_counter: u64,
    pub profile: CostProfile,
}

/// Reachable sets switch from a sorted list to a bitset once they hold
/// about `n log n / 64` elements, where a word-parallel union is cheaper
/// than walking the list.
fn sparse_limit(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let n = n as f64;
    ((n / 64.0 * n.log2()).ceil() as usize).max(1)
}

enum ReachSet {
    Sparse(Vec<usize>),
    Dense(Vec<u64>),
}

struct Sweep {
    sets: Vec<ReachSet>,
    sizes: Vec<usize>,
    work: u64,
    closure_edges: usize,
}

/// Reverse-topological sweep. With `limit` set, gives up (returning the
/// partial work) as soon as the closure edges found so far reach it.
fn sweep(g: &DirectedGraph, limit: Option<f64>) -> Result<Result<Sweep, u64>, ClosureError> {
    let n = g.vertex_count();
    let order = topological_order(g)?;
    let cutoff = sparse_limit(n);
    let mut sets: Vec<ReachSet> = (0..n).map(|_| ReachSet::Sparse(Vec::new())).collect();
    let mut sizes = vec![0usize; n];
    let mut marks = BitSet::new(n);
    let mut members: Vec<usize> = Vec::new();
    let mut work = 0u64;
    let mut closure_edges = 0usize;

    for &v in order.order().iter().rev() {
        members.clear();
        let mut dense = false;
        for &w in g.out_neighbors(v) {
            marks.insert(w);
            members.push(w);
        }
        for &w in g.out_neighbors(v) {
            work += sizes[w] as u64;
            match &sets[w] {
                ReachSet::Sparse(list) => {
                    if dense {
                        for &x in list {
                            marks.insert(x);
                        }
                    } else {
                        for &x in list {
                            if marks.insert(x) {
                                members.push(x);
                            }
                        }
                    }
                }
                ReachSet::Dense(words) => {
                    dense = true;
                    marks.union_words(words);
                }
            }
        }
        let size = if dense { marks.len() } else { members.len() };
        sets[v] = if size >= cutoff {
            ReachSet::Dense(marks.words().to_vec())
        } else if dense {
            ReachSet::Sparse(marks.iter().collect())
        } else {
            members.sort_unstable();
            ReachSet::Sparse(members.clone())
        };
        sizes[v] = size;
        if dense {
            marks.clear();
        } else {
            for &x in &members {
                marks.remove(x);
            }
        }
        closure_edges += size;
        if let Some(limit) = limit {
            if closure_edges as f64 >= limit {
                return Ok(Err(work));
            }
        }
    }
    Ok(Ok(Sweep {
        sets,
        sizes,
        work,
        closure_edges,
    }))
}

fn alpha_for(n: usize, closure_edges: usize) -> f64 {
    if n <= 1 || closure_edges == 0 {
        return 0.5;
    }
    let a = 0.5 + 0.5 * (closure_edges as f64).ln() / (n as f64).ln();
    a.clamp(0.5, 1.0)
}

fn profile_for(g: &DirectedGraph, sizes: &[usize], closure_edges: usize) -> CostProfile {
    let n = g.vertex_count();
    let alpha = alpha_for(n, closure_edges);
    let threshold = (n as f64).powf(alpha);
    let (mut small, mut large) = (0u64, 0u64);
    for (_, w) in g.edges() {
        let s = sizes[w] as u64;
        if sizes[w] as f64 <= threshold {
            small += s;
        } else {
            large += s;
        }
    }
    CostProfile {
        alpha,
        small_set_work: small,
        large_set_work: large,
    }
}

fn finish_sweep(g: &DirectedGraph, s: Sweep) -> ClosureResult {
    let profile = profile_for(g, &s.sizes, s.closure_edges);
    let adj = s
        .sets
        .into_iter()
        .map(|set| match set {
            ReachSet::Sparse(l) => l,
            ReachSet::Dense(w) => iter_words(&w).collect(),
        })
        .collect();
    ClosureResult {
        closure: DirectedGraph::from_sorted_adjacency(adj, false),
        input_edges: g.edge_count(),
        closure_edges: s.closure_edges,
        method_used: ClosureMethod::Gk,
        work_counter: s.work,
        profile,
    }
}

/// Transitive closure of a DAG by the reverse-topological sweep.
pub fn gk_closure(g: &DirectedGraph) -> Result<ClosureResult, ClosureError> {
    let s = sweep(g, None)?.expect("no limit set");
    Ok(finish_sweep(g, s))
}

/// Transitive closure of a DAG by repeated boolean squaring
/// `R <- R | R*R` on packed rows, stopping at a fixpoint or after
/// `ceil(log2 n)` rounds.
pub fn bitmatrix_closure(g: &DirectedGraph) -> Result<ClosureResult, ClosureError> {
    topological_order(g)?;
    let n = g.vertex_count();
    let wc = word_count(n);
    let mut rows = vec![0u64; n * wc];
    for (u, v) in g.edges() {
        rows[u * wc + (v >> 6)] |= 1 << (v & 63);
    }
    let rounds = if n <= 1 {
        0
    } else {
        (n as f64).log2().ceil() as usize
    };
    let mut work = 0u64;
    let mut next = rows.clone();
    for _ in 0..rounds {
        for i in 0..n {
            let (lo, hi) = (i * wc, (i + 1) * wc);
            for j in iter_words(&rows[lo..hi]) {
                let src = &rows[j * wc..(j + 1) * wc];
                for (a, b) in next[lo..hi].iter_mut().zip(src) {
                    *a |= *b;
                }
                work += wc as u64;
            }
        }
        if next == rows {
            break;
        }
        rows.copy_from_slice(&next);
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| iter_words(&rows[i * wc..(i + 1) * wc]).collect())
        .collect();
    let closure = DirectedGraph::from_sorted_adjacency(adj, false);
    let sizes: Vec<usize> = (0..n).map(|v| closure.out_neighbors(v).len()).collect();
    let closure_edges = closure.edge_count();
    Ok(ClosureResult {
        profile: profile_for(g, &sizes, closure_edges),
        closure,
        input_edges: g.edge_count(),
        closure_edges,
        method_used: ClosureMethod::BitMatrix,
        work_counter: work,
    })
}

/// Closure-size threshold at which the hybrid abandons the sweep:
/// `n^((3 omega - 1) / 4)`.
pub fn hybrid_threshold(n: usize, omega: f64) -> f64 {
    (n as f64).powf((3.0 * omega - 1.0) / 4.0)
}

/// Runs the sweep until the closure grows to [`hybrid_threshold`] edges,
/// then restarts with boolean matrix squaring. `method_used` reports which
/// of the two produced the answer; `work_counter` includes the abandoned
/// sweep.
pub fn hybrid_closure(g: &DirectedGraph, omega: f64) -> Result<ClosureResult, ClosureError> {
    if !(omega > 2.0 && omega <= 3.0) {
        return Err(ClosureError::InvalidExponent(omega));
    }
    let limit = hybrid_threshold(g.vertex_count(), omega);
    match sweep(g, Some(limit))? {
        Ok(s) => Ok(finish_sweep(g, s)),
        Err(partial) => {
            let mut r = bitmatrix_closure(g)?;
            r.work_counter += partial;
            Ok(r)
        }
    }
}

/// Closure of a DAG with the chosen method.
pub fn dag_closure(
    g: &DirectedGraph,
    method: ClosureMethod,
    omega: f64,
) -> Result<ClosureResult, ClosureError> {
    match method {
        ClosureMethod::Gk => gk_closure(g),
        ClosureMethod::BitMatrix => bitmatrix_closure(g),
        ClosureMethod::Hybrid => hybrid_closure(g, omega),
    }
}

/// Closure of an arbitrary digraph: condense strongly connected
/// components, close the condensation, and expand. Vertices on a cycle
/// (including a self-loop) reach themselves and so get a self-loop.
pub fn closure_with(
    g: &DirectedGraph,
    method: ClosureMethod,
    omega: f64,
) -> Result<ClosureResult, ClosureError> {
    let c = condense_scc(g);
    let mut inner = dag_closure(&c.dag, method, omega)?;
    let n = g.vertex_count();
    let mut adj = Vec::with_capacity(n);
    let mut loops = false;
    for v in 0..n {
        let cv = c.component_of[v];
        let cyclic = c.components[cv].len() > 1 || g.has_self_loop(v);
        let mut out = Vec::new();
        if cyclic {
            out.extend_from_slice(&c.components[cv]);
            loops = true;
        }
        for &d in inner.closure.out_neighbors(cv) {
            out.extend_from_slice(&c.components[d]);
        }
        out.sort_unstable();
        adj.push(out);
    }
    let closure = DirectedGraph::from_sorted_adjacency(adj, loops);
    inner.input_edges = g.edge_count();
    inner.closure_edges = closure.edge_count();
    inner.closure = closure;
    Ok(inner)
}

/// Closure of an arbitrary digraph by the sweep.
pub fn closure_of_general_digraph(g: &DirectedGraph) -> ClosureResult {
    closure_with(g, ClosureMethod::Gk, DEFAULT_OMEGA).expect("condensation is acyclic")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityCheck {
    pub transitive: bool,
    /// Lexicographically smallest `(v, w, x)` with edges `v->w`, `w->x`
    /// and no edge `v->x`.
    pub witness: Option<(usize, usize, usize)>,
    pub work: u64,
}

/// Checks `N(w) ⊆ N(v)` for every edge `v->w`, stopping at the first
/// violation. Self-loops count as ordinary edges, so a 2-cycle without
/// loops is reported as non-transitive.
pub fn is_transitive(g: &DirectedGraph) -> TransitivityCheck {
    let n = g.vertex_count();
    let mut marks = BitSet::new(n);
    let mut work = 0u64;
    for v in 0..n {
        for &w in g.out_neighbors(v) {
            marks.insert(w);
        }
        for &w in g.out_neighbors(v) {
            for &x in g.out_neighbors(w) {
                work += 1;
                if !marks.contains(x) {
                    return TransitivityCheck {
                        transitive: false,
                        witness: Some((v, w, x)),
                        work,
                    };
                }
            }
        }
        for &w in g.out_neighbors(v) {
            marks.remove(w);
        }
    }
    TransitivityCheck {
        transitive: true,
        witness: None,
        work,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> DirectedGraph {
        DirectedGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Closure by DFS from every vertex.
    fn reach_oracle(g: &DirectedGraph) -> Vec<(usize, usize)> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        for s in 0..n {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = g.out_neighbors(s).to_vec();
            while let Some(v) = stack.pop() {
                if !seen[v] {
                    seen[v] = true;
                    stack.extend_from_slice(g.out_neighbors(v));
                }
            }
            out.extend((0..n).filter(|&t| seen[t]).map(|t| (s, t)));
        }
        out
    }

    #[test]
    fn chain_closure_is_complete_order() {
        let r = gk_closure(&chain(5)).unwrap();
        assert_eq!(r.closure_edges, 10);
        assert_eq!(r.input_edges, 4);
        // merges: 3->4 adds 1, 2->3 adds 2, 1->2 adds 3, 0->1 adds... sizes 0,1,2,3
        assert_eq!(r.work_counter, 6);
        assert!(is_transitive(&r.closure).transitive);
    }

    #[test]
    fn methods_agree_on_diamond_with_dense_sets() {
        // 200 vertices forces some sets past the sparse limit
        let n = 200;
        let edges: Vec<_> = (0..n)
            .flat_map(|i| [(i, i + 1), (i, i + 3)])
            .filter(|&(_, j)| j < n)
            .collect();
        let g = DirectedGraph::from_edges(n, edges).unwrap();
        let a = gk_closure(&g).unwrap();
        let b = bitmatrix_closure(&g).unwrap();
        assert_eq!(a.closure, b.closure);
        assert_eq!(a.closure.edges().collect::<Vec<_>>(), reach_oracle(&g));
    }

    #[test]
    fn cycle_rejected() {
        let g = DirectedGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(
            gk_closure(&g),
            Err(ClosureError::CycleDetected(_))
        ));
        assert!(matches!(
            bitmatrix_closure(&g),
            Err(ClosureError::CycleDetected(_))
        ));
    }

    #[test]
    fn hybrid_rejects_bad_omega() {
        let g = chain(3);
        for w in [2.0, 3.01, f64::NAN, 1.5] {
            assert!(matches!(
                hybrid_closure(&g, w),
                Err(ClosureError::InvalidExponent(_))
            ));
        }
        assert!(hybrid_closure(&g, 3.0).is_ok());
    }

    #[test]
    fn general_digraph_gets_loops_on_cycles() {
        let g = DirectedGraph::from_edges_with_loops(5, [(0, 1), (1, 0), (1, 2), (3, 3)]).unwrap();
        let r = closure_of_general_digraph(&g);
        let edges: Vec<_> = r.closure.edges().collect();
        assert_eq!(
            edges,
            vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (3, 3)]
        );
        assert_eq!(edges, reach_oracle(&g));
    }

    #[test]
    fn transitivity_witness_is_smallest() {
        let t = is_transitive(&chain(4));
        assert!(!t.transitive);
        assert_eq!(t.witness, Some((0, 1, 2)));
        let two_cycle = DirectedGraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(is_transitive(&two_cycle).witness, Some((0, 1, 0)));
        let looped =
            DirectedGraph::from_edges_with_loops(2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(is_transitive(&looped).transitive);
    }
}
