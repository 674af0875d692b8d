//! Comparability graph recognition by orienting and then checking.
//!
//! The orientation step partitions the edges into implication classes with
//! Γ-forcing: arcs `a->b` and `a->b'` force each other whenever `b` and
//! `b'` are not adjacent, and likewise for `a->b`, `a'->b`. Classes are
//! peeled off one at a time; edges of earlier classes no longer count as
//! edges when later classes are built. A class that forces one of its
//! edges both ways proves the graph is not a comparability graph. If every
//! class is consistent, the union of the chosen directions is a candidate
//! orientation, and the graph is a comparability graph exactly when that
//! orientation is transitive.

use thiserror::Error;

use crate::closure::is_transitive;
use crate::graph::{DirectedGraph, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("edge {{{}, {}}} is forced in both directions", edge.0, edge.1)]
pub struct ForcingContradiction {
    pub edge: (usize, usize),
}

/// An orientation of every edge of an undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub directed: DirectedGraph,
    /// Implication class of each edge, indexed like `UndirectedGraph::edges`.
    pub class_of_edge: Vec<usize>,
    pub class_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComparabilityCertificate {
    /// A transitive orientation.
    Transitive(DirectedGraph),
    /// The orientation built by forcing, with a triple `v->w->x` that lacks
    /// `v->x`.
    NotTransitive {
        orientation: DirectedGraph,
        witness: (usize, usize, usize),
    },
    /// An edge forced both ways within one implication class.
    Contradiction(ForcingContradiction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparabilityVerdict {
    pub is_comparability: bool,
    pub certificate: ComparabilityCertificate,
}

struct EdgeIndex<'a> {
    g: &'a UndirectedGraph,
    ids: Vec<Vec<usize>>,
}

impl<'a> EdgeIndex<'a> {
    fn new(g: &'a UndirectedGraph) -> (Self, Vec<(usize, usize)>) {
        let edges: Vec<_> = g.edges().collect();
        let n = g.vertex_count();
        let mut ids: Vec<Vec<usize>> = (0..n).map(|v| vec![0; g.degree(v)]).collect();
        for (e, &(u, v)) in edges.iter().enumerate() {
            let iu = g.neighbors(u).binary_search(&v).unwrap();
            let iv = g.neighbors(v).binary_search(&u).unwrap();
            ids[u][iu] = e;
            ids[v][iv] = e;
        }
        (EdgeIndex { g, ids }, edges)
    }

    fn id(&self, u: usize, v: usize) -> Option<usize> {
        self.g
            .neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.ids[u][i])
    }
}

/// Orients every edge by Γ-forcing. Each class is seeded with its smallest
/// remaining edge `{u, v}`, `u < v`, oriented `u->v`.
pub fn orient_transitively(g: &UndirectedGraph) -> Result<Orientation, ForcingContradiction> {
    const NONE: usize = usize::MAX;
    let (index, edges) = EdgeIndex::new(g);
    let mut class = vec![NONE; edges.len()];
    // true: smaller endpoint -> larger endpoint
    let mut forward = vec![false; edges.len()];
    let mut class_count = 0;
    let mut stack: Vec<usize> = Vec::new();

    // `{a, b}` still counts as an edge while building class `current`
    let present = |class: &[usize], a: usize, b: usize, current: usize| match index.id(a, b) {
        Some(e) => class[e] == NONE || class[e] >= current,
        None => false,
    };

    for seed in 0..edges.len() {
        if class[seed] != NONE {
            continue;
        }
        let current = class_count;
        class_count += 1;
        class[seed] = current;
        forward[seed] = true;
        stack.push(seed);
        while let Some(e) = stack.pop() {
            let (lo, hi) = edges[e];
            let (a, b) = if forward[e] { (lo, hi) } else { (hi, lo) };
            // a->b forces a->b2 and a2->b
            let mut forced: Vec<(usize, usize)> = Vec::new();
            for &b2 in g.neighbors(a) {
                if b2 != b && !present(&class, b, b2, current) {
                    forced.push((a, b2));
                }
            }
            for &a2 in g.neighbors(b) {
                if a2 != a && !present(&class, a, a2, current) {
                    forced.push((a2, b));
                }
            }
            for (from, to) in forced {
                let f = index.id(from, to).expect("forced pair is an edge");
                if class[f] != NONE && class[f] < current {
                    continue;
                }
                let want = from < to;
                if class[f] == NONE {
                    class[f] = current;
                    forward[f] = want;
                    stack.push(f);
                } else if forward[f] != want {
                    let (lo, hi) = edges[f];
                    return Err(ForcingContradiction { edge: (lo, hi) });
                }
            }
        }
    }

    let arcs = edges
        .iter()
        .zip(&forward)
        .map(|(&(lo, hi), &fw)| if fw { (lo, hi) } else { (hi, lo) });
    let directed =
        DirectedGraph::from_edges(g.vertex_count(), arcs).expect("orientation of a simple graph");
    Ok(Orientation {
        directed,
        class_of_edge: class,
        class_count,
    })
}

/// Decides whether `g` has a transitive orientation, with a certificate
/// either way.
pub fn is_comparability(g: &UndirectedGraph) -> ComparabilityVerdict {
    match orient_transitively(g) {
        Err(c) => ComparabilityVerdict {
            is_comparability: false,
            certificate: ComparabilityCertificate::Contradiction(c),
        },
        Ok(o) => {
            let t = is_transitive(&o.directed);
            match t.witness {
                None => ComparabilityVerdict {
                    is_comparability: true,
                    certificate: ComparabilityCertificate::Transitive(o.directed),
                },
                Some(witness) => ComparabilityVerdict {
                    is_comparability: false,
                    certificate: ComparabilityCertificate::NotTransitive {
                        orientation: o.directed,
                        witness,
                    },
                },
            }
        }
    }
}

/// Checks a certificate against the graph it claims to describe.
pub fn check_certificate(g: &UndirectedGraph, v: &ComparabilityVerdict) -> Result<(), String> {
    let is_orientation = |d: &DirectedGraph| {
        d.vertex_count() == g.vertex_count()
            && d.edge_count() == g.edge_count()
            && d.edges().all(|(a, b)| g.has_edge(a, b))
    };
    match &v.certificate {
        ComparabilityCertificate::Transitive(d) => {
            if !v.is_comparability {
                return Err("transitive orientation attached to a negative verdict".into());
            }
            if !is_orientation(d) {
                return Err("certificate is not an orientation of the graph".into());
            }
            if !is_transitive(d).transitive {
                return Err("orientation is not transitive".into());
            }
        }
        ComparabilityCertificate::NotTransitive {
            orientation,
            witness: (a, b, c),
        } => {
            if v.is_comparability {
                return Err("failure certificate attached to a positive verdict".into());
            }
            if !is_orientation(orientation) {
                return Err("certificate is not an orientation of the graph".into());
            }
            if !(orientation.has_edge(*a, *b)
                && orientation.has_edge(*b, *c)
                && !orientation.has_edge(*a, *c))
            {
                return Err("witness triple does not break transitivity".into());
            }
        }
        ComparabilityCertificate::Contradiction(c) => {
            if v.is_comparability {
                return Err("contradiction attached to a positive verdict".into());
            }
            if !g.has_edge(c.edge.0, c.edge.1) {
                return Err("contradiction names a non-edge".into());
            }
        }
    }
    Ok(())
}
