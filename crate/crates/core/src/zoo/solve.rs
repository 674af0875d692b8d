//! Definitional solvers. Each one is the straightforward quadratic (or, for
//! dominating triples, cubic) algorithm and serves as ground truth for the
//! reductions.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::instances::*;
use super::{InstanceKind, Problem, SolveError, Verdict, Witness};
use crate::bits::{word_count, BitSet};
use crate::graph::{all_pairs_distances, bfs_distances, Dist, UndirectedGraph, UNREACHABLE};

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn is_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn union_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        n += 1;
    }
    n + (a.len() - i) + (b.len() - j)
}

/// Some pair `(i, j)` of listed evaluations satisfying every clause; the
/// first in row-major order.
pub fn solve_ksat_star(inst: &SplitCnfInstance) -> Verdict {
    let m = inst.clauses.len();
    let sat_x: Vec<BitSet> = inst
        .x_evals
        .iter()
        .map(|a| {
            let mut b = BitSet::new(m);
            for c in (0..m).filter(|&c| inst.satisfied_by_x(c, a)) {
                b.insert(c);
            }
            b
        })
        .collect();
    let sat_y: Vec<BitSet> = inst
        .y_evals
        .iter()
        .map(|a| {
            let mut b = BitSet::new(m);
            for c in (0..m).filter(|&c| inst.satisfied_by_y(c, a)) {
                b.insert(c);
            }
            b
        })
        .collect();
    let full = full_words(m);
    for (i, sx) in sat_x.iter().enumerate() {
        for (j, sy) in sat_y.iter().enumerate() {
            let all = sx
                .words()
                .iter()
                .zip(sy.words())
                .zip(&full)
                .all(|((a, b), f)| a | b == *f);
            if all {
                return Verdict::yes(Witness::Pair(i, j));
            }
        }
    }
    Verdict::no()
}

fn full_words(n: usize) -> Vec<u64> {
    let mut w = vec![u64::MAX; word_count(n)];
    if !n.is_multiple_of(64) {
        *w.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
    }
    w
}

/// First pair `p < q` of disjoint sets.
pub fn solve_two_disjoint_sets(f: &SetFamilyInstance) -> Verdict {
    let s = &f.sets;
    for p in 0..s.len() {
        for q in p + 1..s.len() {
            if is_disjoint(&s[p], &s[q]) {
                return Verdict::yes(Witness::Pair(p, q));
            }
        }
    }
    Verdict::no()
}

/// First ordered pair `(p, q)`, `p != q`, with `sets[p] ⊆ sets[q]`.
pub fn solve_sperner(f: &SetFamilyInstance) -> Verdict {
    let s = &f.sets;
    for p in 0..s.len() {
        for q in 0..s.len() {
            if p != q && is_subset(&s[p], &s[q]) {
                return Verdict::yes(Witness::Pair(p, q));
            }
        }
    }
    Verdict::no()
}

/// First pair `p < q` whose union is the whole ground set.
pub fn solve_two_covering(f: &SetFamilyInstance) -> Verdict {
    let s = &f.sets;
    for p in 0..s.len() {
        for q in p + 1..s.len() {
            if union_len(&s[p], &s[q]) == f.ground_size {
                return Verdict::yes(Witness::Pair(p, q));
            }
        }
    }
    Verdict::no()
}

/// Indices of the inclusion-maximal sets. Of several equal maximal sets
/// only the lowest index is kept.
pub fn solve_maximal_elements(f: &SetFamilyInstance) -> Verdict {
    let s = &f.sets;
    let keep = (0..s.len())
        .filter(|&p| {
            (0..s.len()).all(|q| {
                q == p
                    || !is_subset(&s[p], &s[q])
                    || (s[p].len() == s[q].len() && p < q)
            })
        })
        .collect();
    Verdict::Indices(keep)
}

/// Every ordered pair `(p, q)`, `p != q`, with `sets[p] ⊆ sets[q]`.
pub fn solve_subset_graph(f: &SetFamilyInstance) -> Verdict {
    let s = &f.sets;
    let mut edges = Vec::new();
    for p in 0..s.len() {
        for q in 0..s.len() {
            if p != q && is_subset(&s[p], &s[q]) {
                edges.push((p, q));
            }
        }
    }
    Verdict::Edges(edges)
}

pub fn solve_orthogonal_vectors(v: &VectorCollection) -> Verdict {
    solve_two_disjoint_sets(&vectors_to_family(v))
}

/// First ordered pair `(v, w)`, `v != w`, with `N(v) ⊇ N(w)`.
pub fn solve_dominated_vertex(g: &UndirectedGraph) -> Verdict {
    let n = g.vertex_count();
    for v in 0..n {
        for w in 0..n {
            if v != w && is_subset(g.neighbors(w), g.neighbors(v)) {
                return Verdict::yes(Witness::Pair(v, w));
            }
        }
    }
    Verdict::no()
}

/// BFS distances and shortest-path counts from `s`, plus the visit order.
fn bfs_counts(g: &UndirectedGraph, s: usize) -> (Vec<Dist>, Vec<BigUint>, Vec<usize>) {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut sigma = vec![BigUint::zero(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    dist[s] = 0;
    sigma[s] = BigUint::one();
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[u] + 1 {
                let add = sigma[u].clone();
                sigma[w] += add;
            }
        }
    }
    (dist, sigma, order)
}

fn ratio(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(num.into(), den.clone().into())
}

/// Exact betweenness of `v` over unordered pairs `{s, t}` not containing
/// `v`: one BFS from `v` and one from every other vertex, summing
/// `σ_sv σ_vt / σ_st` whenever `v` lies on an `s`-`t` geodesic.
pub fn betweenness_of_vertex(g: &UndirectedGraph, v: usize) -> BigRational {
    let n = g.vertex_count();
    let (dv, sv, _) = bfs_counts(g, v);
    let mut total = BigRational::zero();
    for s in 0..n {
        if s == v || dv[s] == UNREACHABLE {
            continue;
        }
        let (ds, ss, _) = bfs_counts(g, s);
        for t in s + 1..n {
            if t == v || dv[t] == UNREACHABLE {
                continue;
            }
            if ds[v] + dv[t] == ds[t] {
                total += ratio(&sv[s] * &sv[t], &ss[t]);
            }
        }
    }
    total
}

/// Exact betweenness of every vertex by dependency accumulation.
pub fn betweenness_all(g: &UndirectedGraph) -> Vec<BigRational> {
    let n = g.vertex_count();
    let mut bc = vec![BigRational::zero(); n];
    for s in 0..n {
        let (dist, sigma, order) = bfs_counts(g, s);
        let mut delta = vec![BigRational::zero(); n];
        for &w in order.iter().rev() {
            let carry = BigRational::one() + &delta[w];
            for &u in g.neighbors(w) {
                if dist[u] != UNREACHABLE && dist[u] + 1 == dist[w] {
                    let add = ratio(sigma[u].clone(), &sigma[w]) * &carry;
                    delta[u] += add;
                }
            }
            if w != s {
                bc[w] += &delta[w];
            }
        }
    }
    let two = BigRational::from_integer(2.into());
    bc.into_iter().map(|b| b / &two).collect()
}

/// Sum of distances from every vertex, `None` where some vertex is
/// unreachable.
pub fn farness(g: &UndirectedGraph) -> Vec<Option<u64>> {
    (0..g.vertex_count())
        .map(|v| farness_of(g, v))
        .collect()
}

pub(crate) fn farness_of(g: &UndirectedGraph, v: usize) -> Option<u64> {
    let d = bfs_distances(g, v);
    if d.contains(&UNREACHABLE) {
        None
    } else {
        Some(d.iter().map(|&x| x as u64).sum())
    }
}

/// Whether closeness `1/farness` is below `sigma`. A vertex that cannot
/// reach every other vertex has closeness 0; a lone vertex (farness 0) has
/// no finite closeness and never qualifies.
pub(crate) fn closeness_below(far: Option<u64>, sigma: &BigRational) -> bool {
    if *sigma <= BigRational::zero() {
        return false;
    }
    match far {
        None => true,
        Some(0) => false,
        Some(f) => sigma * BigRational::from_integer(f.into()) > BigRational::one(),
    }
}

/// True with the least central vertex (lowest index on ties) when its
/// closeness is below `sigma`.
pub fn min_closeness(g: &UndirectedGraph, sigma: &BigRational) -> Verdict {
    let far = farness(g);
    // unreachable (closeness 0) beats any finite farness
    let key = |f: &Option<u64>| match f {
        None => u64::MAX,
        Some(x) => *x,
    };
    let best = (0..far.len()).fold(None::<usize>, |acc, v| match acc {
        Some(b) if key(&far[b]) >= key(&far[v]) => Some(b),
        _ => Some(v),
    });
    match best {
        Some(v) if closeness_below(far[v], sigma) => Verdict::yes(Witness::Vertex(v)),
        _ => Verdict::no(),
    }
}

/// True iff the diameter is 2. A diameter-3 answer carries the first pair
/// at distance 3. Any other diameter breaks the promise.
pub fn diameter_2_or_3(g: &UndirectedGraph) -> Result<Verdict, SolveError> {
    let d = all_pairs_distances(g);
    match d.diameter() {
        None => Err(SolveError::PromiseViolated("graph is disconnected".into())),
        Some(2) => Ok(Verdict::Bool {
            answer: true,
            witness: None,
        }),
        Some(3) => {
            let n = g.vertex_count();
            let pair = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .find(|&(u, v)| d.get(u, v) == 3)
                .expect("a pair at the diameter");
            Ok(Verdict::Bool {
                answer: false,
                witness: Some(Witness::Pair(pair.0, pair.1)),
            })
        }
        Some(k) => Err(SolveError::PromiseViolated(format!(
            "diameter is {k}, not 2 or 3"
        ))),
    }
}

/// Largest sum minus second largest among the three pairings of
/// `x, y, v, w`.
pub(crate) fn quadruple_hyperbolicity(xy: Dist, vw: Dist, xv: Dist, yw: Dist, xw: Dist, yv: Dist) -> u64 {
    let mut s = [
        xy as u64 + vw as u64,
        xv as u64 + yw as u64,
        xw as u64 + yv as u64,
    ];
    s.sort_unstable();
    s[2] - s[1]
}

/// Maximum hyperbolicity over quadruples `x, y, v, w` with `v, w` distinct
/// and outside `{x, y}`; the witness is the first maximizing pair.
pub fn hyperbolicity_fixed_pair(
    g: &UndirectedGraph,
    x: usize,
    y: usize,
) -> Result<Verdict, SolveError> {
    let n = g.vertex_count();
    for v in [x, y] {
        if v >= n {
            return Err(SolveError::VertexOutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(SolveError::PromiseViolated("fixed vertices coincide".into()));
    }
    let d = all_pairs_distances(g);
    if d.diameter().is_none() {
        return Err(SolveError::Disconnected);
    }
    let mut best: Option<(u64, usize, usize)> = None;
    for v in (0..n).filter(|&v| v != x && v != y) {
        for w in (v + 1..n).filter(|&w| w != x && w != y) {
            let h = quadruple_hyperbolicity(
                d.get(x, y),
                d.get(v, w),
                d.get(x, v),
                d.get(y, w),
                d.get(x, w),
                d.get(y, v),
            );
            if best.is_none_or(|(b, _, _)| h > b) {
                best = Some((h, v, w));
            }
        }
    }
    Ok(match best {
        None => Verdict::Integer {
            value: 0,
            witness: None,
        },
        Some((h, v, w)) => Verdict::Integer {
            value: h,
            witness: Some(Witness::Pair(v, w)),
        },
    })
}

fn closed_neighborhoods(g: &UndirectedGraph) -> Vec<BitSet> {
    (0..g.vertex_count())
        .map(|v| {
            let mut b = BitSet::new(g.vertex_count());
            b.insert(v);
            for &w in g.neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect()
}

/// First triple `v < w < x` whose closed neighborhoods cover the graph.
pub fn solve_3_dominating(g: &UndirectedGraph) -> Verdict {
    let n = g.vertex_count();
    let nb = closed_neighborhoods(g);
    let full = full_words(n);
    let mut pair = vec![0u64; full.len()];
    for v in 0..n {
        for w in v + 1..n {
            for (p, (a, b)) in pair.iter_mut().zip(nb[v].words().iter().zip(nb[w].words())) {
                *p = a | b;
            }
            for x in w + 1..n {
                let covers = pair
                    .iter()
                    .zip(nb[x].words())
                    .zip(&full)
                    .all(|((p, c), f)| p | c == *f);
                if covers {
                    return Verdict::yes(Witness::Triple(v, w, x));
                }
            }
        }
    }
    Verdict::no()
}

/// First pair `v < w` whose closed neighborhoods cover `subset` (or equal
/// it, with `exact`).
pub fn solve_subset_2_dominating(g: &UndirectedGraph, subset: &[usize], exact: bool) -> Verdict {
    let n = g.vertex_count();
    let nb = closed_neighborhoods(g);
    let mut target = BitSet::new(n);
    for &v in subset {
        target.insert(v);
    }
    for v in 0..n {
        for w in v + 1..n {
            let ok = nb[v]
                .words()
                .iter()
                .zip(nb[w].words())
                .zip(target.words())
                .all(|((a, b), t)| {
                    let u = a | b;
                    if exact {
                        u == *t
                    } else {
                        u & t == *t
                    }
                });
            if ok {
                return Verdict::yes(Witness::Pair(v, w));
            }
        }
    }
    Verdict::no()
}

/// Whether the boolean product has a zero entry; the witness is the first
/// such cell in row-major order.
pub fn zeros_in_matmul(p: &BinaryMatrixPair) -> Verdict {
    let cols = p.right.cols;
    let rows: Vec<BitSet> = p
        .right
        .row_ones
        .iter()
        .map(|r| {
            let mut b = BitSet::new(cols);
            for &j in r {
                b.insert(j);
            }
            b
        })
        .collect();
    let full = full_words(cols);
    let mut acc = vec![0u64; full.len()];
    for i in 0..p.left.rows {
        acc.fill(0);
        for &k in &p.left.row_ones[i] {
            for (a, b) in acc.iter_mut().zip(rows[k].words()) {
                *a |= b;
            }
        }
        for (wi, (a, f)) in acc.iter().zip(&full).enumerate() {
            let missing = !a & f;
            if missing != 0 {
                let j = wi * 64 + missing.trailing_zeros() as usize;
                return Verdict::yes(Witness::Cell(i, j));
            }
        }
    }
    Verdict::no()
}

pub(crate) fn symbols_match(a: u8, b: u8) -> bool {
    a == b || a == b'*' || b == b'*'
}

/// Longest pair of equal-length windows matching position by position,
/// with `*` matching anything. The witness is the first longest window
/// pair by end position.
pub fn local_align_wildcard(p: &WildcardStringPair) -> Verdict {
    let (a, b) = (&p.s1, &p.s2);
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    let mut best = (0usize, 0usize, 0usize);
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            cur[j] = if symbols_match(a[i - 1], b[j - 1]) {
                prev[j - 1] + 1
            } else {
                0
            };
            if cur[j] > best.0 {
                best = (cur[j], i, j);
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let (len, i, j) = best;
    Verdict::Integer {
        value: len as u64,
        witness: (len > 0).then_some(Witness::Window {
            start1: i - len,
            start2: j - len,
            len,
        }),
    }
}

fn wrong(problem: Problem, got: &Instance) -> SolveError {
    SolveError::WrongInstance {
        problem,
        expected: problem.instance_kind(),
        got: got.kind_name(),
    }
}

/// Solves any problem on a matching instance.
pub fn solve(problem: Problem, inst: &Instance) -> Result<Verdict, SolveError> {
    use Problem::*;
    if InstanceKind::of(inst) != problem.instance_kind() {
        return Err(wrong(problem, inst));
    }
    let check_vertex = |g: &UndirectedGraph, v: usize| {
        if v < g.vertex_count() {
            Ok(())
        } else {
            Err(SolveError::VertexOutOfRange {
                vertex: v,
                n: g.vertex_count(),
            })
        }
    };
    Ok(match (problem, inst) {
        (KSatStar, Instance::SplitCnf(i)) => solve_ksat_star(i),
        (TwoDisjointSets | BigTwoDisjointSets, Instance::SetFamily(f)) => {
            solve_two_disjoint_sets(f)
        }
        (SpernerFamily | BigSpernerFamily, Instance::SetFamily(f)) => solve_sperner(f),
        (TwoCovering | BigTwoCovering, Instance::SetFamily(f)) => solve_two_covering(f),
        (MaximalElements, Instance::SetFamily(f)) => solve_maximal_elements(f),
        (SubsetGraph, Instance::SetFamily(f)) => solve_subset_graph(f),
        (OrthogonalVectors, Instance::Vectors(v)) => solve_orthogonal_vectors(v),
        (GraphDominatedVertex, Instance::Graph(g)) => solve_dominated_vertex(g),
        (BipGraphDominatedVertex, Instance::Bipartite(b)) => solve_dominated_vertex(&b.graph),
        (BetweennessCentrality, Instance::Graph(g)) => Verdict::Rationals(betweenness_all(g)),
        (BetweennessCentralityVertex, Instance::GraphVertex { graph, vertex }) => {
            check_vertex(graph, *vertex)?;
            Verdict::Rational(betweenness_of_vertex(graph, *vertex))
        }
        (MinimumClosenessCentrality, Instance::GraphThreshold { graph, threshold }) => {
            min_closeness(graph, threshold)
        }
        (GraphDiameter2Or3, Instance::Graph(g)) => diameter_2_or_3(g)?,
        (SplitGraphDiameter2Or3, Instance::Split(s)) => diameter_2_or_3(&s.graph)?,
        (HyperbolicityFixedPair, Instance::GraphPair { graph, x, y }) => {
            hyperbolicity_fixed_pair(graph, *x, *y)?
        }
        (ThreeDominatingSet, Instance::Graph(g)) => solve_3_dominating(g),
        (BipartiteThreeDominatingSet, Instance::Bipartite(b)) => solve_3_dominating(&b.graph),
        (
            BipartiteSubsetTwoDominatingSet,
            Instance::GraphSubset {
                graph,
                subset,
                exact,
            },
        ) => {
            for &v in subset {
                check_vertex(graph, v)?;
            }
            solve_subset_2_dominating(graph, subset, *exact)
        }
        (ZerosMatrixMultiplication, Instance::Matrices(m)) => zeros_in_matmul(m),
        (LocalStringAlign, Instance::Strings(s)) => local_align_wildcard(s),
        _ => return Err(wrong(problem, inst)),
    })
}
