//! The quadratic-time problems connected by the reductions, each with a
//! definitional solver and an independent witness checker.

mod check;
mod instances;
mod solve;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use check::check_verdict;
pub use instances::*;
pub use solve::*;

/// Problem tags, written in kebab case on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    KSatStar,
    TwoDisjointSets,
    BigTwoDisjointSets,
    SpernerFamily,
    BigSpernerFamily,
    TwoCovering,
    BigTwoCovering,
    MaximalElements,
    SubsetGraph,
    OrthogonalVectors,
    GraphDominatedVertex,
    BipGraphDominatedVertex,
    BetweennessCentrality,
    BetweennessCentralityVertex,
    MinimumClosenessCentrality,
    GraphDiameter2Or3,
    SplitGraphDiameter2Or3,
    HyperbolicityFixedPair,
    ThreeDominatingSet,
    BipartiteThreeDominatingSet,
    BipartiteSubsetTwoDominatingSet,
    ZerosMatrixMultiplication,
    LocalStringAlign,
}

/// Instance shape a problem expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    SplitCnf,
    SetFamily,
    Vectors,
    Graph,
    Bipartite,
    Split,
    GraphVertex,
    GraphThreshold,
    GraphPair,
    GraphSubset,
    Matrices,
    Strings,
}

impl Problem {
    pub const ALL: [Problem; 23] = [
        Problem::KSatStar,
        Problem::TwoDisjointSets,
        Problem::BigTwoDisjointSets,
        Problem::SpernerFamily,
        Problem::BigSpernerFamily,
        Problem::TwoCovering,
        Problem::BigTwoCovering,
        Problem::MaximalElements,
        Problem::SubsetGraph,
        Problem::OrthogonalVectors,
        Problem::GraphDominatedVertex,
        Problem::BipGraphDominatedVertex,
        Problem::BetweennessCentrality,
        Problem::BetweennessCentralityVertex,
        Problem::MinimumClosenessCentrality,
        Problem::GraphDiameter2Or3,
        Problem::SplitGraphDiameter2Or3,
        Problem::HyperbolicityFixedPair,
        Problem::ThreeDominatingSet,
        Problem::BipartiteThreeDominatingSet,
        Problem::BipartiteSubsetTwoDominatingSet,
        Problem::ZerosMatrixMultiplication,
        Problem::LocalStringAlign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::KSatStar => "ksat-star",
            Problem::TwoDisjointSets => "two-disjoint-sets",
            Problem::BigTwoDisjointSets => "big-two-disjoint-sets",
            Problem::SpernerFamily => "sperner-family",
            Problem::BigSpernerFamily => "big-sperner-family",
            Problem::TwoCovering => "two-covering",
            Problem::BigTwoCovering => "big-two-covering",
            Problem::MaximalElements => "maximal-elements",
            Problem::SubsetGraph => "subset-graph",
            Problem::OrthogonalVectors => "orthogonal-vectors",
            Problem::GraphDominatedVertex => "graph-dominated-vertex",
            Problem::BipGraphDominatedVertex => "bip-graph-dominated-vertex",
            Problem::BetweennessCentrality => "betweenness-centrality",
            Problem::BetweennessCentralityVertex => "betweenness-centrality-vertex",
            Problem::MinimumClosenessCentrality => "minimum-closeness-centrality",
            Problem::GraphDiameter2Or3 => "graph-diameter-2-or-3",
            Problem::SplitGraphDiameter2Or3 => "split-graph-diameter-2-or-3",
            Problem::HyperbolicityFixedPair => "hyperbolicity-fixed-pair",
            Problem::ThreeDominatingSet => "3-dominating-set",
            Problem::BipartiteThreeDominatingSet => "bipartite-3-dominating-set",
            Problem::BipartiteSubsetTwoDominatingSet => "bipartite-subset-2-dominating-set",
            Problem::ZerosMatrixMultiplication => "zeros-matrix-multiplication",
            Problem::LocalStringAlign => "local-string-align",
        }
    }

    pub fn from_name(s: &str) -> Option<Problem> {
        Problem::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn instance_kind(self) -> InstanceKind {
        use Problem::*;
        match self {
            KSatStar => InstanceKind::SplitCnf,
            TwoDisjointSets | BigTwoDisjointSets | SpernerFamily | BigSpernerFamily
            | TwoCovering | BigTwoCovering | MaximalElements | SubsetGraph => {
                InstanceKind::SetFamily
            }
            OrthogonalVectors => InstanceKind::Vectors,
            GraphDominatedVertex | BetweennessCentrality | GraphDiameter2Or3
            | ThreeDominatingSet => InstanceKind::Graph,
            BipGraphDominatedVertex | BipartiteThreeDominatingSet => InstanceKind::Bipartite,
            SplitGraphDiameter2Or3 => InstanceKind::Split,
            BetweennessCentralityVertex => InstanceKind::GraphVertex,
            MinimumClosenessCentrality => InstanceKind::GraphThreshold,
            HyperbolicityFixedPair => InstanceKind::GraphPair,
            BipartiteSubsetTwoDominatingSet => InstanceKind::GraphSubset,
            ZerosMatrixMultiplication => InstanceKind::Matrices,
            LocalStringAlign => InstanceKind::Strings,
        }
    }

    /// Whether the problem restricts to instances with the big promise.
    pub fn is_big(self) -> bool {
        matches!(
            self,
            Problem::BigTwoDisjointSets | Problem::BigSpernerFamily | Problem::BigTwoCovering
        )
    }
}

impl serde::Serialize for Problem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl InstanceKind {
    pub fn of(i: &Instance) -> InstanceKind {
        match i {
            Instance::SplitCnf(_) => InstanceKind::SplitCnf,
            Instance::SetFamily(_) => InstanceKind::SetFamily,
            Instance::Vectors(_) => InstanceKind::Vectors,
            Instance::Graph(_) => InstanceKind::Graph,
            Instance::Bipartite(_) => InstanceKind::Bipartite,
            Instance::Split(_) => InstanceKind::Split,
            Instance::GraphVertex { .. } => InstanceKind::GraphVertex,
            Instance::GraphThreshold { .. } => InstanceKind::GraphThreshold,
            Instance::GraphPair { .. } => InstanceKind::GraphPair,
            Instance::GraphSubset { .. } => InstanceKind::GraphSubset,
            Instance::Matrices(_) => InstanceKind::Matrices,
            Instance::Strings(_) => InstanceKind::Strings,
        }
    }
}

/// Evidence attached to a verdict. What the ids mean depends on the
/// problem; see [`check_verdict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Pair(usize, usize),
    Triple(usize, usize, usize),
    Vertex(usize),
    Cell(usize, usize),
    Window {
        start1: usize,
        start2: usize,
        len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Bool {
        answer: bool,
        witness: Option<Witness>,
    },
    Rational(BigRational),
    Rationals(Vec<BigRational>),
    Integer {
        value: u64,
        witness: Option<Witness>,
    },
    Indices(Vec<usize>),
    Edges(Vec<(usize, usize)>),
}

impl Verdict {
    pub fn yes(witness: Witness) -> Verdict {
        Verdict::Bool {
            answer: true,
            witness: Some(witness),
        }
    }

    pub fn no() -> Verdict {
        Verdict::Bool {
            answer: false,
            witness: None,
        }
    }

    pub fn answer(&self) -> Option<bool> {
        match self {
            Verdict::Bool { answer, .. } => Some(*answer),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Bool { witness, .. } | Verdict::Integer { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }

    /// Equality of the answer part, ignoring witnesses.
    pub fn same_answer(&self, other: &Verdict) -> bool {
        match (self, other) {
            (Verdict::Bool { answer: a, .. }, Verdict::Bool { answer: b, .. }) => a == b,
            (Verdict::Integer { value: a, .. }, Verdict::Integer { value: b, .. }) => a == b,
            (a, b) => a == b,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair(a, b) => write!(f, "{a} {b}"),
            Witness::Triple(a, b, c) => write!(f, "{a} {b} {c}"),
            Witness::Vertex(v) => write!(f, "{v}"),
            Witness::Cell(i, j) => write!(f, "{i} {j}"),
            Witness::Window {
                start1,
                start2,
                len,
            } => write!(f, "{start1} {start2} {len}"),
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Bool { answer, witness } => {
                write!(f, "{answer}")?;
                if let Some(w) = witness {
                    write!(f, " witness {w}")?;
                }
                Ok(())
            }
            Verdict::Rational(r) => write!(f, "{r}"),
            Verdict::Rationals(rs) => write!(f, "{}", join(rs)),
            Verdict::Integer { value, witness } => {
                write!(f, "{value}")?;
                if let Some(w) = witness {
                    write!(f, " witness {w}")?;
                }
                Ok(())
            }
            Verdict::Indices(ix) => write!(f, "{}", join(ix)),
            Verdict::Edges(es) => {
                let parts: Vec<String> = es.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{problem} expects a {expected:?} instance, got a {got}")]
    WrongInstance {
        problem: Problem,
        expected: InstanceKind,
        got: &'static str,
    },
    #[error("promise violated: {0}")]
    PromiseViolated(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(Problem::from_name(p.name()), Some(p));
        }
        assert_eq!(Problem::from_name("nope"), None);
    }

    #[test]
    fn verdict_text() {
        assert_eq!(Verdict::yes(Witness::Pair(0, 1)).to_string(), "true witness 0 1");
        assert_eq!(Verdict::no().to_string(), "false");
        let half = BigRational::new(5.into(), 2.into());
        assert_eq!(Verdict::Rational(half).to_string(), "5/2");
    }
}
