//! Independent oracles, written from the definitions with no shared code
//! beyond the graph containers.
#![allow(dead_code)]

use std::collections::VecDeque;

use subquad_core::graph::{DirectedGraph, UndirectedGraph};

/// `reach[u][v]` iff a path of length at least one leads from `u` to `v`.
pub fn reachability(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| {
            let mut seen = vec![false; n];
            let mut queue: VecDeque<usize> = g.out_neighbors(u).iter().copied().collect();
            for &w in g.out_neighbors(u) {
                seen[w] = true;
            }
            while let Some(x) = queue.pop_front() {
                for &w in g.out_neighbors(x) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            seen
        })
        .collect()
}

pub fn closure_edges_oracle(g: &DirectedGraph) -> Vec<(usize, usize)> {
    let r = reachability(g);
    let n = g.vertex_count();
    (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| r[u][v])
        .collect()
}

/// Triple scan: first `(u, v, w)` with `u->v`, `v->w`, no `u->w`.
pub fn transitivity_oracle(g: &DirectedGraph) -> Option<(usize, usize, usize)> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
    }
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if adj[u][v] && adj[v][w] && !adj[u][w] {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

pub fn validates_witness(g: &DirectedGraph, (u, v, w): (usize, usize, usize)) -> bool {
    g.has_edge(u, v) && g.has_edge(v, w) && !g.has_edge(u, w)
}

/// Tries all `2^m` orientations; an orientation is transitive when the
/// out-set of every out-neighbor of `u` lies inside the out-set of `u`.
pub fn comparability_oracle(g: &UndirectedGraph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let n = g.vertex_count();
    assert!(m <= 20 && n <= 64, "exhaustive search is for small graphs");
    (0u32..1 << m).any(|mask| {
        let mut out = vec![0u64; n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out[a] |= 1 << b;
            } else {
                out[b] |= 1 << a;
            }
        }
        (0..n).all(|u| {
            let mut rest = out[u];
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if out[v] & !out[u] != 0 {
                    return false;
                }
            }
            true
        })
    })
}

pub const INF: u32 = u32::MAX / 4;

/// Floyd–Warshall distances.
pub fn floyd(g: &UndirectedGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (a, b) in g.edges() {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Maximum over `v, w` outside `{x, y}` of largest minus second-largest
/// pairwise distance sum, by brute force over the quadruples.
pub fn hyperbolicity_oracle(g: &UndirectedGraph, x: usize, y: usize) -> u64 {
    let d = floyd(g);
    let n = g.vertex_count();
    let mut best = 0u64;
    for v in 0..n {
        for w in 0..n {
            if v == w || [x, y].contains(&v) || [x, y].contains(&w) {
                continue;
            }
            let mut s = [
                (d[x][y] + d[v][w]) as u64,
                (d[x][v] + d[y][w]) as u64,
                (d[x][w] + d[y][v]) as u64,
            ];
            s.sort_unstable();
            best = best.max(s[2] - s[1]);
        }
    }
    best
}

pub fn diameter(g: &UndirectedGraph) -> Option<u32> {
    let d = floyd(g);
    let m = d.iter().flatten().copied().max().unwrap_or(0);
    (m < INF).then_some(m)
}
