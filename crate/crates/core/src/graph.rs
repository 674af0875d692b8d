//! Graph representations and the traversal primitives shared by every other
//! module: adjacency storage, topological ordering, strongly connected
//! components, and breadth-first distances.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

/// Distance value used by the BFS routines. Unreachable pairs hold
/// [`UNREACHABLE`].
pub type Dist = u32;

/// Sentinel distance for vertices that cannot be reached.
pub const UNREACHABLE: Dist = Dist::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("graph contains a cycle: {0:?}")]
    CycleDetected(Vec<usize>),
    #[error("{0}")]
    Invalid(String),
}

/// Read access to an adjacency structure with sorted neighbor lists.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];
}

/// A directed graph on vertices `0..n` with sorted, duplicate-free
/// out-neighbor lists. Self-loops are rejected unless the graph was built
/// with [`DirectedGraph::from_edges_with_loops`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    loops_allowed: bool,
}

impl DirectedGraph {
    pub fn empty(n: usize) -> Self {
        DirectedGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            loops_allowed: false,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges, false)
    }

    pub fn from_edges_with_loops<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges, true)
    }

    fn build<I>(n: usize, edges: I, loops_allowed: bool) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v && !loops_allowed {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
        }
        let mut edge_count = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u, w[0]));
            }
            edge_count += list.len();
        }
        Ok(DirectedGraph {
            adj,
            edge_count,
            loops_allowed,
        })
    }

    /// Builds a graph from adjacency lists that are already sorted and
    /// duplicate-free. Only checked in debug builds.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>, loops_allowed: bool) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(u, l)| {
            l.windows(2).all(|w| w[0] < w[1])
                && l.iter().all(|&v| v < adj.len() && (loops_allowed || v != u))
        }));
        let edge_count = adj.iter().map(Vec::len).sum();
        DirectedGraph {
            adj,
            edge_count,
            loops_allowed,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    pub fn reverse(&self) -> DirectedGraph {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (u, v) in self.edges() {
            adj[v].push(u);
        }
        // edges() is lexicographic, so every reversed list is already sorted
        DirectedGraph::from_sorted_adjacency(adj, self.loops_allowed)
    }
}

impl Adjacency for DirectedGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// A simple undirected graph: symmetric sorted adjacency, no self-loops,
/// no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
            twice += list.len();
        }
        Ok(UndirectedGraph {
            adj,
            edge_count: twice / 2,
        })
    }

    /// Like [`UndirectedGraph::from_edges`] but silently merges repeated
    /// edges. Used by gadget builders that add overlapping cliques.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(UndirectedGraph {
            adj,
            edge_count: twice / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| {
            let start = l.partition_point(|&v| v <= u);
            l[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || bfs_distances(self, 0).iter().all(|&d| d != UNREACHABLE)
    }
}

impl Adjacency for UndirectedGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// A topological order together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalOrder {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl TopologicalOrder {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `v` in the order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }
}

/// Kahn's algorithm. Among the vertices that are ready at any step the
/// smallest id goes first, so the order is unique for a given graph.
/// On a cycle the error carries the vertices of one directed cycle.
pub fn topological_order(g: &DirectedGraph) -> Result<TopologicalOrder, GraphError> {
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    for (_, v) in g.edges() {
        indeg[v] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &v in g.out_neighbors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    if order.len() < n {
        return Err(GraphError::CycleDetected(find_cycle(g, &indeg)));
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    Ok(TopologicalOrder { order, rank })
}

/// Every vertex left with positive in-degree after Kahn's algorithm has a
/// predecessor that is also left, so walking predecessors must revisit a
/// vertex.
fn find_cycle(g: &DirectedGraph, indeg: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut pred = vec![usize::MAX; n];
    for (u, v) in g.edges() {
        if indeg[u] > 0 && indeg[v] > 0 && pred[v] == usize::MAX {
            pred[v] = u;
        }
    }
    let start = (0..n).find(|&v| indeg[v] > 0).expect("a leftover vertex");
    let mut seen = vec![false; n];
    let mut v = start;
    while !seen[v] {
        seen[v] = true;
        v = pred[v];
    }
    let mut cycle = vec![v];
    let mut u = pred[v];
    while u != v {
        cycle.push(u);
        u = pred[u];
    }
    cycle.reverse();
    cycle
}

/// Strongly connected components collapsed into a DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// DAG on component ids.
    pub dag: DirectedGraph,
    /// Component id of each original vertex.
    pub component_of: Vec<usize>,
    /// Members of each component, sorted.
    pub components: Vec<Vec<usize>>,
}

impl Condensation {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Tarjan's algorithm, iterative. Components are numbered by their
/// smallest member so that an acyclic input condenses to itself.
pub fn condense_scc(g: &DirectedGraph) -> Condensation {
    let n = g.vertex_count();
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw_comp = vec![NONE; n];
    let mut raw_count = 0;
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            let nbrs = g.out_neighbors(v);
            if top.1 < nbrs.len() {
                let w = nbrs[top.1];
                top.1 += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    raw_comp[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
        }
    }

    // renumber by smallest member
    let mut first_seen = vec![NONE; raw_count];
    let mut count = 0;
    for v in 0..n {
        let r = raw_comp[v];
        if first_seen[r] == NONE {
            first_seen[r] = count;
            count += 1;
        }
    }
    let component_of: Vec<usize> = (0..n).map(|v| first_seen[raw_comp[v]]).collect();
    let mut components = vec![Vec::new(); count];
    for v in 0..n {
        components[component_of[v]].push(v);
    }
    let mut adj = vec![Vec::new(); count];
    for (u, v) in g.edges() {
        let (cu, cv) = (component_of[u], component_of[v]);
        if cu != cv {
            adj[cu].push(cv);
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    Condensation {
        dag: DirectedGraph::from_sorted_adjacency(adj, false),
        component_of,
        components,
    }
}

/// Single-source BFS distances over out-neighbors.
pub fn bfs_distances<G: Adjacency + ?Sized>(g: &G, source: usize) -> Vec<Dist> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = d;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All-pairs distances, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Dist {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Dist] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest finite distance, or `None` if some pair is unreachable.
    pub fn diameter(&self) -> Option<Dist> {
        let mut best = 0;
        for &d in &self.dist {
            if d == UNREACHABLE {
                return None;
            }
            best = best.max(d);
        }
        Some(best)
    }
}

/// One BFS per vertex.
pub fn all_pairs_distances<G: Adjacency + ?Sized>(g: &G) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(bfs_distances(g, s));
    }
    DistanceMatrix { n, dist }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            DirectedGraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            DirectedGraph::from_edges(2, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            DirectedGraph::from_edges(2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            UndirectedGraph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(DirectedGraph::from_edges_with_loops(2, [(1, 1)]).is_ok());
    }

    #[test]
    fn topo_order_prefers_small_ids() {
        let g = DirectedGraph::from_edges(5, [(3, 1), (4, 0), (2, 0)]).unwrap();
        let t = topological_order(&g).unwrap();
        assert_eq!(t.order(), &[2, 3, 1, 4, 0]);
        assert_eq!(t.rank(0), 4);
    }

    #[test]
    fn cycle_is_reported() {
        let g = DirectedGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)]).unwrap();
        match topological_order(&g) {
            Err(GraphError::CycleDetected(c)) => {
                let mut s = c.clone();
                s.sort();
                assert_eq!(s, vec![1, 2, 3]);
                for i in 0..c.len() {
                    assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn condensation_of_dag_is_identity() {
        let g = DirectedGraph::from_edges(4, [(0, 2), (1, 2), (2, 3)]).unwrap();
        let c = condense_scc(&g);
        assert_eq!(c.dag, g);
        assert_eq!(c.component_of, vec![0, 1, 2, 3]);
    }

    #[test]
    fn condensation_merges_cycles() {
        let g = DirectedGraph::from_edges(5, [(4, 0), (0, 3), (3, 0), (3, 1), (1, 2), (2, 1)])
            .unwrap();
        let c = condense_scc(&g);
        assert_eq!(c.components, vec![vec![0, 3], vec![1, 2], vec![4]]);
        assert_eq!(c.dag.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 0)]);
    }

    #[test]
    fn bfs_on_path() {
        let g = UndirectedGraph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(bfs_distances(&g, 0), vec![0, 1, 2, UNREACHABLE]);
        let d = all_pairs_distances(&g);
        assert_eq!(d.diameter(), None);
        assert_eq!(d.get(2, 0), 2);
    }

    #[test]
    fn undirected_edges_listed_once() {
        let g = UndirectedGraph::from_edges(3, [(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        assert_eq!(g.edge_count(), 2);
    }
}
