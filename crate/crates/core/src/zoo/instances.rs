//! Instance types for the problem zoo.

use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{GraphError, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("element {element} out of range for a ground set of size {ground}")]
    ElementOutOfRange { element: usize, ground: usize },
    #[error("set {set} lists element {element} twice")]
    DuplicateElement { set: usize, element: usize },
    #[error("ground set of size {ground} exceeds the big-instance bound {bound:.2}")]
    BigPromiseViolated { ground: usize, bound: f64 },
    #[error("malformed literal {0}")]
    MalformedLiteral(i64),
    #[error("clause {clause} has {len} literals, more than the width {width}")]
    ClauseTooWide {
        clause: usize,
        len: usize,
        width: usize,
    },
    #[error("evaluation has {got} bits, expected {expected}")]
    EvaluationWidth { got: usize, expected: usize },
    #[error("character {0:?} is not one of 0, 1, *")]
    BadSymbol(char),
    #[error("matrix dimensions do not chain: {0} columns against {1} rows")]
    DimensionMismatch(usize, usize),
    #[error("edge ({0}, {1}) joins two vertices on the same side")]
    NotBipartite(usize, usize),
    #[error("not a split graph: {0}")]
    NotSplit(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("side labels cover {got} vertices, graph has {n}")]
    SideLength { got: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The polylog bound `|X| <= c * (log2 max(2, |C|))^k` that big instances
/// promise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigPromise {
    pub c: f64,
    pub k: i32,
}

impl Default for BigPromise {
    fn default() -> Self {
        BigPromise { c: 1.0, k: 3 }
    }
}

impl BigPromise {
    pub fn bound(&self, set_count: usize) -> f64 {
        self.c * (set_count.max(2) as f64).log2().powi(self.k)
    }

    pub fn admits(&self, ground_size: usize, set_count: usize) -> bool {
        ground_size as f64 <= self.bound(set_count)
    }
}

/// A ground set `0..ground_size` and a list of subsets. Repeated sets are
/// allowed; pairs are always pairs of distinct indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamilyInstance {
    pub ground_size: usize,
    pub sets: Vec<Vec<usize>>,
    /// Whether the instance claims the big-instance promise.
    pub big: bool,
}

impl SetFamilyInstance {
    /// Sorts every set and checks ranges and duplicates.
    pub fn new(ground_size: usize, sets: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let mut sets = sets;
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            if let Some(&e) = s.iter().find(|&&e| e >= ground_size) {
                return Err(InstanceError::ElementOutOfRange {
                    element: e,
                    ground: ground_size,
                });
            }
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(InstanceError::DuplicateElement {
                    set: i,
                    element: w[0],
                });
            }
        }
        Ok(SetFamilyInstance {
            ground_size,
            sets,
            big: false,
        })
    }

    /// Claims the big-instance promise after checking it.
    pub fn into_big(mut self, promise: &BigPromise) -> Result<Self, InstanceError> {
        if !promise.admits(self.ground_size, self.sets.len()) {
            return Err(InstanceError::BigPromiseViolated {
                ground: self.ground_size,
                bound: promise.bound(self.sets.len()),
            });
        }
        self.big = true;
        Ok(self)
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// Ground size plus number of sets plus total membership count.
    pub fn size(&self) -> usize {
        self.ground_size + self.sets.len() + self.sets.iter().map(Vec::len).sum::<usize>()
    }

    /// Complement of every set within the ground set, indices preserved.
    pub fn complemented(&self) -> SetFamilyInstance {
        let sets = self
            .sets
            .iter()
            .map(|s| complement(s, self.ground_size))
            .collect();
        SetFamilyInstance {
            ground_size: self.ground_size,
            sets,
            big: self.big,
        }
    }
}

pub(crate) fn complement(sorted: &[usize], ground: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(ground - sorted.len());
    let mut it = sorted.iter().peekable();
    for e in 0..ground {
        if it.peek() == Some(&&e) {
            it.next();
        } else {
            out.push(e);
        }
    }
    out
}

/// CNF over two disjoint variable blocks with the candidate assignments of
/// each block listed explicitly.
///
/// Literals use signed DIMACS numbering: variables `1..=x_vars` are the
/// x-block, `x_vars+1..=x_vars+y_vars` the y-block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCnfInstance {
    pub x_vars: usize,
    pub y_vars: usize,
    pub width: usize,
    pub clauses: Vec<Vec<i64>>,
    pub x_evals: Vec<Vec<bool>>,
    pub y_evals: Vec<Vec<bool>>,
}

/// Which block a literal's variable lives in, with its index in the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    X(usize),
    Y(usize),
}

impl SplitCnfInstance {
    pub fn new(
        x_vars: usize,
        y_vars: usize,
        width: usize,
        clauses: Vec<Vec<i64>>,
        x_evals: Vec<Vec<bool>>,
        y_evals: Vec<Vec<bool>>,
    ) -> Result<Self, InstanceError> {
        let total = (x_vars + y_vars) as i64;
        for (i, c) in clauses.iter().enumerate() {
            if c.len() > width {
                return Err(InstanceError::ClauseTooWide {
                    clause: i,
                    len: c.len(),
                    width,
                });
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.abs() > total) {
                return Err(InstanceError::MalformedLiteral(l));
            }
        }
        for (evals, expected) in [(&x_evals, x_vars), (&y_evals, y_vars)] {
            if let Some(e) = evals.iter().find(|e| e.len() != expected) {
                return Err(InstanceError::EvaluationWidth {
                    got: e.len(),
                    expected,
                });
            }
        }
        Ok(SplitCnfInstance {
            x_vars,
            y_vars,
            width,
            clauses,
            x_evals,
            y_evals,
        })
    }

    pub fn block(&self, lit: i64) -> Block {
        let v = lit.unsigned_abs() as usize;
        if v <= self.x_vars {
            Block::X(v - 1)
        } else {
            Block::Y(v - 1 - self.x_vars)
        }
    }

    /// Whether clause `c` has a true x-literal under `a`.
    pub fn satisfied_by_x(&self, c: usize, a: &[bool]) -> bool {
        self.clauses[c].iter().any(|&l| match self.block(l) {
            Block::X(i) => a[i] == (l > 0),
            Block::Y(_) => false,
        })
    }

    pub fn satisfied_by_y(&self, c: usize, b: &[bool]) -> bool {
        self.clauses[c].iter().any(|&l| match self.block(l) {
            Block::Y(i) => b[i] == (l > 0),
            Block::X(_) => false,
        })
    }

    pub fn size(&self) -> usize {
        self.x_vars
            + self.y_vars
            + self.clauses.len()
            + self.clauses.iter().map(Vec::len).sum::<usize>()
            + self.x_evals.len() * self.x_vars.max(1)
            + self.y_evals.len() * self.y_vars.max(1)
    }
}

/// Sparse 0/1 vectors of a common dimension, stored by support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorCollection {
    pub dim: usize,
    pub vectors: Vec<Vec<usize>>,
}

impl VectorCollection {
    pub fn new(dim: usize, vectors: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let f = SetFamilyInstance::new(dim, vectors)?;
        Ok(VectorCollection {
            dim,
            vectors: f.sets,
        })
    }

    pub fn size(&self) -> usize {
        self.dim + self.vectors.len() + self.vectors.iter().map(Vec::len).sum::<usize>()
    }
}

/// Reads each set as the support of an indicator vector.
pub fn family_to_vectors(f: &SetFamilyInstance) -> VectorCollection {
    VectorCollection {
        dim: f.ground_size,
        vectors: f.sets.clone(),
    }
}

pub fn vectors_to_family(v: &VectorCollection) -> SetFamilyInstance {
    SetFamilyInstance {
        ground_size: v.dim,
        sets: v.vectors.clone(),
        big: false,
    }
}

/// A 0/1 matrix stored as the sorted column indices of the ones in each row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub row_ones: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    pub fn new(rows: usize, cols: usize, row_ones: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        if row_ones.len() != rows {
            return Err(InstanceError::DimensionMismatch(row_ones.len(), rows));
        }
        let f = SetFamilyInstance::new(cols, row_ones)?;
        Ok(BinaryMatrix {
            rows,
            cols,
            row_ones: f.sets,
        })
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = vec![Vec::new(); self.cols];
        for (i, r) in self.row_ones.iter().enumerate() {
            for &j in r {
                t[j].push(i);
            }
        }
        BinaryMatrix {
            rows: self.cols,
            cols: self.rows,
            row_ones: t,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_ones[i].binary_search(&j).is_ok()
    }

    pub fn ones(&self) -> usize {
        self.row_ones.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrixPair {
    pub left: BinaryMatrix,
    pub right: BinaryMatrix,
}

impl BinaryMatrixPair {
    pub fn new(left: BinaryMatrix, right: BinaryMatrix) -> Result<Self, InstanceError> {
        if left.cols != right.rows {
            return Err(InstanceError::DimensionMismatch(left.cols, right.rows));
        }
        Ok(BinaryMatrixPair { left, right })
    }

    pub fn size(&self) -> usize {
        self.left.rows + self.left.cols + self.right.cols + self.left.ones() + self.right.ones()
    }
}

/// Two strings over `0`, `1` and the wildcard `*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildcardStringPair {
    pub s1: Vec<u8>,
    pub s2: Vec<u8>,
}

impl WildcardStringPair {
    pub fn new(s1: &str, s2: &str) -> Result<Self, InstanceError> {
        for ch in s1.chars().chain(s2.chars()) {
            if !matches!(ch, '0' | '1' | '*') {
                return Err(InstanceError::BadSymbol(ch));
            }
        }
        Ok(WildcardStringPair {
            s1: s1.as_bytes().to_vec(),
            s2: s2.as_bytes().to_vec(),
        })
    }

    pub fn size(&self) -> usize {
        self.s1.len() + self.s2.len()
    }
}

/// A graph with a side label per vertex; every edge crosses sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub graph: UndirectedGraph,
    pub left: Vec<bool>,
}

impl BipartiteGraph {
    pub fn new(graph: UndirectedGraph, left: Vec<bool>) -> Result<Self, InstanceError> {
        if left.len() != graph.vertex_count() {
            return Err(InstanceError::SideLength {
                got: left.len(),
                n: graph.vertex_count(),
            });
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| left[u] == left[v]) {
            return Err(InstanceError::NotBipartite(u, v));
        }
        Ok(BipartiteGraph { graph, left })
    }
}

/// A graph whose vertices split into a clique and an independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGraph {
    pub graph: UndirectedGraph,
    pub clique: Vec<bool>,
}

impl SplitGraph {
    pub fn new(graph: UndirectedGraph, clique: Vec<bool>) -> Result<Self, InstanceError> {
        let n = graph.vertex_count();
        if clique.len() != n {
            return Err(InstanceError::SideLength {
                got: clique.len(),
                n,
            });
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| !clique[u] && !clique[v]) {
            return Err(InstanceError::NotSplit(format!(
                "independent vertices {u} and {v} are adjacent"
            )));
        }
        let k = clique.iter().filter(|&&c| c).count();
        for v in (0..n).filter(|&v| clique[v]) {
            let inside = graph.neighbors(v).iter().filter(|&&w| clique[w]).count();
            if inside != k - 1 {
                return Err(InstanceError::NotSplit(format!(
                    "clique vertex {v} misses another clique vertex"
                )));
            }
        }
        Ok(SplitGraph { graph, clique })
    }
}

/// Every instance shape a zoo problem can take.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    SplitCnf(SplitCnfInstance),
    SetFamily(SetFamilyInstance),
    Vectors(VectorCollection),
    Graph(UndirectedGraph),
    Bipartite(BipartiteGraph),
    Split(SplitGraph),
    GraphVertex {
        graph: UndirectedGraph,
        vertex: usize,
    },
    GraphThreshold {
        graph: UndirectedGraph,
        threshold: BigRational,
    },
    GraphPair {
        graph: UndirectedGraph,
        x: usize,
        y: usize,
    },
    /// `exact` asks for equality with the neighborhood union rather than
    /// coverage.
    GraphSubset {
        graph: UndirectedGraph,
        subset: Vec<usize>,
        exact: bool,
    },
    Matrices(BinaryMatrixPair),
    Strings(WildcardStringPair),
}

impl Instance {
    /// Element count used by the size contract of reductions.
    pub fn size(&self) -> usize {
        let g = |g: &UndirectedGraph| g.vertex_count() + g.edge_count();
        match self {
            Instance::SplitCnf(i) => i.size(),
            Instance::SetFamily(i) => i.size(),
            Instance::Vectors(i) => i.size(),
            Instance::Graph(gr) => g(gr),
            Instance::Bipartite(b) => g(&b.graph),
            Instance::Split(s) => g(&s.graph),
            Instance::GraphVertex { graph, .. } => g(graph) + 1,
            Instance::GraphThreshold { graph, .. } => g(graph) + 1,
            Instance::GraphPair { graph, .. } => g(graph) + 2,
            Instance::GraphSubset { graph, subset, .. } => g(graph) + subset.len(),
            Instance::Matrices(m) => m.size(),
            Instance::Strings(s) => s.size(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Instance::SplitCnf(_) => "split CNF",
            Instance::SetFamily(_) => "set family",
            Instance::Vectors(_) => "vector collection",
            Instance::Graph(_) => "graph",
            Instance::Bipartite(_) => "bipartite graph",
            Instance::Split(_) => "split graph",
            Instance::GraphVertex { .. } => "graph with a vertex",
            Instance::GraphThreshold { .. } => "graph with a threshold",
            Instance::GraphPair { .. } => "graph with a vertex pair",
            Instance::GraphSubset { .. } => "graph with a vertex subset",
            Instance::Matrices(_) => "matrix pair",
            Instance::Strings(_) => "string pair",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_family_validation() {
        let f = SetFamilyInstance::new(3, vec![vec![2, 0], vec![]]).unwrap();
        assert_eq!(f.sets, vec![vec![0, 2], vec![]]);
        assert!(SetFamilyInstance::new(2, vec![vec![2]]).is_err());
        assert!(SetFamilyInstance::new(2, vec![vec![1, 1]]).is_err());
        assert_eq!(f.complemented().sets, vec![vec![1], vec![0, 1, 2]]);
    }

    #[test]
    fn big_promise_bound() {
        let p = BigPromise::default();
        // log2(8)^3 = 27
        assert!(p.admits(27, 8));
        assert!(!p.admits(28, 8));
        // fewer than two sets still allows one element
        assert!(p.admits(1, 0));
    }

    #[test]
    fn split_cnf_blocks() {
        let i = SplitCnfInstance::new(2, 1, 2, vec![vec![1, -3]], vec![], vec![]).unwrap();
        assert_eq!(i.block(-3), Block::Y(0));
        assert_eq!(i.block(2), Block::X(1));
        assert!(SplitCnfInstance::new(1, 1, 2, vec![vec![3]], vec![], vec![]).is_err());
        assert!(SplitCnfInstance::new(1, 1, 1, vec![vec![1, 2]], vec![], vec![]).is_err());
        assert!(SplitCnfInstance::new(1, 1, 1, vec![], vec![vec![]], vec![]).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let f = SetFamilyInstance::new(2, vec![vec![0], vec![]]).unwrap();
        let v = family_to_vectors(&f);
        assert_eq!(v.vectors, vec![vec![0], vec![]]);
        assert_eq!(vectors_to_family(&v), f);
    }

    #[test]
    fn split_graph_checks() {
        let g = UndirectedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(SplitGraph::new(g.clone(), vec![false, true, false]).is_ok());
        assert!(SplitGraph::new(g.clone(), vec![true, false, true]).is_err());
        assert!(BipartiteGraph::new(g, vec![true, false, false]).is_err());
    }
}
