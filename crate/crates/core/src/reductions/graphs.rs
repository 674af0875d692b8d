//! Reductions producing graphs, matrices and strings.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::sets::{
    canonical_covering, canonical_disjoint, decide_disjoint_trivially, drop_uncovered, empty_set, family, other_than, pair,
    unmapped,
};
use super::ReductionRecord;
use crate::graph::{bfs_distances, UndirectedGraph};
use crate::zoo::{
    is_disjoint, BinaryMatrix, BinaryMatrixPair, BipartiteGraph, Instance, Problem, SetFamilyInstance, SplitGraph,
    Verdict, WildcardStringPair, Witness,
};

fn graph(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
    UndirectedGraph::from_edges(n, edges.iter().copied()).expect("gadget edges are distinct")
}

fn clique(vs: std::ops::Range<usize>, edges: &mut Vec<(usize, usize)>) {
    for a in vs.clone() {
        for b in a + 1..vs.end {
            edges.push((a, b));
        }
    }
}

fn set_input(f: &SetFamilyInstance) -> Instance {
    Instance::SetFamily(f.clone())
}

/// Graph for the betweenness reduction: `y`, `x`, then the sets as `C_x`,
/// the elements as `X`, the sets again as `C_y`. `X`, `C_x` and `C_y` are
/// cliques. Returns the graph; `x` is vertex 1.
pub fn betweenness_gadget(f: &SetFamilyInstance) -> UndirectedGraph {
    let (m, k) = (f.sets.len(), f.ground_size);
    let (y, x, cx, xs, cy) = (0, 1, 2, 2 + m, 2 + m + k);
    let mut edges = vec![(y, x)];
    clique(cx..xs, &mut edges);
    clique(xs..cy, &mut edges);
    clique(cy..cy + m, &mut edges);
    for (p, s) in f.sets.iter().enumerate() {
        edges.push((x, cx + p));
        edges.push((y, cy + p));
        for &e in s {
            edges.push((cx + p, xs + e));
            edges.push((xs + e, cy + p));
        }
    }
    graph(cy + m, &edges)
}

/// A disjoint pair exists exactly when `betweenness(x) > |C|`: every
/// shortest path through `x` runs from `y` (or `C_y`) to `C_x`, and a
/// `C_x`-`C_y` pair uses `x` only when the two sets are disjoint. The
/// target is value-only, so positive answers carry no witness.
pub fn red_big_tds_to_betweenness(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigTwoDisjointSets, Problem::BetweennessCentralityVertex);
    // An empty set would hang off x alone and route its pairs through it.
    if let Some(p) = empty_set(f) {
        let v = if f.sets.len() >= 2 {
            Verdict::yes(pair(p, other_than(p)))
        } else {
            Verdict::no()
        };
        let g = betweenness_gadget(&canonical_disjoint(false));
        let canon = Instance::GraphVertex { graph: g, vertex: 1 };
        return ReductionRecord::decided(src, dst, &set_input(f), canon, v);
    }
    let f2 = drop_uncovered(f);
    let m = BigRational::from_integer(BigInt::from(f.sets.len()));
    ReductionRecord::new(
        src,
        dst,
        &set_input(f),
        Instance::GraphVertex {
            graph: betweenness_gadget(&f2),
            vertex: 1,
        },
        Box::new(move |v| match v {
            Verdict::Rational(b) => Verdict::Bool {
                answer: *b > m,
                witness: None,
            },
            _ => unmapped(),
        }),
    )
}

/// Threshold farness for the closeness reduction on a preprocessed family
/// (uncovered elements dropped, no empty set, no set equal to the ground
/// set): `4|C||X| - 4 sum|C| + 3|C| + 4|X| - 4`.
pub fn closeness_threshold(f: &SetFamilyInstance) -> u64 {
    let (m, k) = (f.sets.len() as u64, f.ground_size as u64);
    let total: u64 = f.sets.iter().map(|s| s.len() as u64).sum();
    4 * m * k + 3 * m + 4 * k - 4 * total - 4
}

/// Layout of the closeness gadget: `X` twice (`0..k`, `k..2k`, one joint
/// clique), the sets at `2k..2k+m`, then one pendant `(e, C)` per element
/// missing from `C`, grouped by set. Returns the graph and the set owning
/// each pendant.
pub fn closeness_gadget(f: &SetFamilyInstance) -> (UndirectedGraph, Vec<usize>) {
    let (m, k) = (f.sets.len(), f.ground_size);
    let c0 = 2 * k;
    let mut edges = Vec::new();
    clique(0..2 * k, &mut edges);
    let mut owner = Vec::new();
    let mut next = c0 + m;
    for (p, s) in f.sets.iter().enumerate() {
        for &e in s {
            edges.push((e, c0 + p));
            edges.push((k + e, c0 + p));
        }
        for _ in crate::zoo::complement(s, k) {
            edges.push((c0 + p, next));
            owner.push(p);
            next += 1;
        }
    }
    (graph(next, &edges), owner)
}

/// Some vertex has farness above the threshold exactly when a pendant hangs
/// off a set that is disjoint from another set.
pub fn red_big_tds_to_closeness(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigTwoDisjointSets, Problem::MinimumClosenessCentrality);
    let input = set_input(f);
    let f2 = drop_uncovered(f);
    // Sets equal to the ground set meet every nonempty set.
    let keep: Vec<usize> = (0..f2.sets.len())
        .filter(|&p| f2.sets[p].len() < f2.ground_size)
        .collect();
    let decided = decide_disjoint_trivially(f).or_else(|| (keep.len() <= 1).then(Verdict::no));
    if let Some(v) = decided {
        let c = canonical_disjoint(false);
        let (g, _) = closeness_gadget(&c);
        let threshold = BigRational::new(1.into(), closeness_threshold(&c).into());
        return ReductionRecord::decided(src, dst, &input, Instance::GraphThreshold { graph: g, threshold }, v);
    }
    let kept = family(f2.ground_size, keep.iter().map(|&p| f2.sets[p].clone()).collect());
    let (g, owner) = closeness_gadget(&kept);
    let first_pendant = 2 * kept.ground_size + kept.sets.len();
    let threshold = BigRational::new(1.into(), closeness_threshold(&kept).into());
    let sets = kept.sets;
    ReductionRecord::new(
        src,
        dst,
        &input,
        Instance::GraphThreshold { graph: g, threshold },
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Vertex(u)),
            } if *u >= first_pendant && u - first_pendant < owner.len() => {
                let p = owner[u - first_pendant];
                (0..sets.len())
                    .find(|&q| q != p && is_disjoint(&sets[p], &sets[q]))
                    .map_or_else(unmapped, |q| Verdict::yes(pair(keep[p], keep[q])))
            }
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// Elements as a clique `0..k`, sets as an independent set after them.
pub fn split_gadget(f: &SetFamilyInstance) -> SplitGraph {
    let (m, k) = (f.sets.len(), f.ground_size);
    let mut edges = Vec::new();
    clique(0..k, &mut edges);
    for (p, s) in f.sets.iter().enumerate() {
        edges.extend(s.iter().map(|&e| (e, k + p)));
    }
    let g = graph(k + m, &edges);
    SplitGraph::new(g, (0..k + m).map(|v| v < k).collect()).expect("gadget is split")
}

/// Diameter 3 exactly when two set vertices share no element. The target
/// answers "diameter is 2", so the answer is negated.
pub fn red_big_tds_to_split_diameter(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigTwoDisjointSets, Problem::SplitGraphDiameter2Or3);
    if let Some(v) = decide_disjoint_trivially(f) {
        let canon = Instance::Split(split_gadget(&canonical_disjoint(false)));
        return ReductionRecord::decided(src, dst, &set_input(f), canon, v);
    }
    let k = f.ground_size;
    ReductionRecord::new(
        src,
        dst,
        &set_input(f),
        Instance::Split(split_gadget(f)),
        Box::new(move |v| match v {
            Verdict::Bool { answer: true, .. } => Verdict::no(),
            Verdict::Bool {
                answer: false,
                witness: Some(Witness::Pair(a, b)),
            } if *a >= k && *b >= k => Verdict::yes(pair(a - k, b - k)),
            _ => unmapped(),
        }),
    )
}

/// `x`, copies `V_x`, `V~`, `V_y` of the vertices, then `y`. `x` and `y`
/// see their whole layer, consecutive layers are matched by identity and
/// the edges of `g` live inside `V~`. With `g` of diameter 2 or 3, the
/// largest hyperbolicity against `(x, y)` exceeds 2 exactly at diameter 3.
pub fn hyperbolicity_gadget(g: &UndirectedGraph) -> (UndirectedGraph, usize, usize) {
    let n = g.vertex_count();
    let (vx, vt, vy, y) = (1, 1 + n, 1 + 2 * n, 1 + 3 * n);
    let mut edges = Vec::with_capacity(4 * n + g.edge_count());
    for v in 0..n {
        edges.push((0, vx + v));
        edges.push((vx + v, vt + v));
        edges.push((vt + v, vy + v));
        edges.push((vy + v, y));
    }
    edges.extend(g.edges().map(|(a, b)| (vt + a, vt + b)));
    (graph(y + 1, &edges), 0, y)
}

/// A pair of `g` at distance 3 near `a` or `b`, found by two BFS runs.
fn distant_pair(g: &UndirectedGraph, a: usize, b: usize) -> Option<Witness> {
    for s in [a, b] {
        let d = bfs_distances(g, s);
        if let Some(t) = d.iter().position(|&x| x == 3) {
            return Some(pair(s, t));
        }
    }
    None
}

pub fn red_diam_to_hyperbolicity(g: &UndirectedGraph) -> ReductionRecord {
    let (h, x, y) = hyperbolicity_gadget(g);
    let n = g.vertex_count();
    let src_graph = g.clone();
    ReductionRecord::new(
        Problem::GraphDiameter2Or3,
        Problem::HyperbolicityFixedPair,
        &Instance::Graph(g.clone()),
        Instance::GraphPair { graph: h, x, y },
        Box::new(move |v| match v {
            Verdict::Integer { value, .. } if *value <= 2 => Verdict::Bool {
                answer: true,
                witness: None,
            },
            Verdict::Integer {
                witness: Some(Witness::Pair(a, b)),
                ..
            } if (1..=3 * n).contains(a) && (1..=3 * n).contains(b) => {
                let (a, b) = ((a - 1) % n, (b - 1) % n);
                Verdict::Bool {
                    answer: false,
                    witness: distant_pair(&src_graph, a, b),
                }
            }
            _ => Verdict::Bool {
                answer: false,
                witness: None,
            },
        }),
    )
}

/// `M` is the element-by-set incidence matrix, padded with empty rows to
/// square when there are more sets than elements; the pair is `(M^T, M)`.
/// Entry `(p, q)` of the product is zero exactly when `C_p` and `C_q` are
/// disjoint; a diagonal zero is an empty set.
pub fn red_big_tds_to_matzero(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigTwoDisjointSets, Problem::ZerosMatrixMultiplication);
    let m = f.sets.len();
    if m <= 1 {
        let canon = red_big_tds_to_matzero(&canonical_disjoint(false)).instance;
        return ReductionRecord::decided(src, dst, &set_input(f), canon, Verdict::no());
    }
    let k = f.ground_size.max(m);
    let mut rows = vec![Vec::new(); k];
    for (p, s) in f.sets.iter().enumerate() {
        for &e in s {
            rows[e].push(p);
        }
    }
    let mm = BinaryMatrix::new(k, m, rows).expect("incidence matrix is valid");
    let pair_m = BinaryMatrixPair::new(mm.transpose(), mm).expect("shapes agree");
    ReductionRecord::new(
        src,
        dst,
        &set_input(f),
        Instance::Matrices(pair_m),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Cell(i, j)),
            } => Verdict::yes(pair(*i, if i == j { other_than(*i) } else { *j })),
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// Near-full sets (missing at most one element) are settled by a scan for
/// a covering partner and removed; the ground set is then padded to three
/// elements with fresh elements added to every set. Returns either the
/// decided verdict or the prepared family with original indices.
enum Prepared {
    Decided(Verdict),
    Family(SetFamilyInstance, Vec<usize>),
}

fn prepare_covering(f: &SetFamilyInstance) -> Prepared {
    let m = f.sets.len();
    if m <= 1 {
        return Prepared::Decided(Verdict::no());
    }
    let k = f.ground_size;
    let mut holder = vec![usize::MAX; k];
    for (p, s) in f.sets.iter().enumerate() {
        for &e in s {
            if holder[e] == usize::MAX {
                holder[e] = p;
            }
        }
    }
    let mut keep = Vec::with_capacity(m);
    for (p, s) in f.sets.iter().enumerate() {
        match k - s.len() {
            0 => return Prepared::Decided(Verdict::yes(pair(p, other_than(p)))),
            1 => {
                let missing = crate::zoo::complement(s, k)[0];
                if holder[missing] != usize::MAX {
                    return Prepared::Decided(Verdict::yes(pair(p, holder[missing])));
                }
            }
            _ => keep.push(p),
        }
    }
    if keep.len() <= 1 {
        return Prepared::Decided(Verdict::no());
    }
    let pad = 3usize.saturating_sub(k);
    let sets = keep
        .iter()
        .map(|&p| {
            let mut s = f.sets[p].clone();
            s.extend(k..k + pad);
            s
        })
        .collect();
    Prepared::Family(family(k + pad, sets), keep)
}

/// Elements and `v0` on one side, sets and a pendant `w0` on the other;
/// `v0` sees every set and `w0`. Any dominating triple contains `v0` or
/// `w0`, and after preprocessing its other two members are a covering pair.
pub fn bip3dom_gadget(f: &SetFamilyInstance) -> BipartiteGraph {
    let (k, m) = (f.ground_size, f.sets.len());
    let (v0, c0, w0) = (k, k + 1, k + 1 + m);
    let mut edges = vec![(v0, w0)];
    for (p, s) in f.sets.iter().enumerate() {
        edges.push((v0, c0 + p));
        edges.extend(s.iter().map(|&e| (e, c0 + p)));
    }
    let g = graph(w0 + 1, &edges);
    BipartiteGraph::new(g, (0..=w0).map(|v| v <= v0).collect()).expect("gadget is bipartite")
}

fn sets_in(vs: &[usize], range: std::ops::Range<usize>, orig: &[usize]) -> Verdict {
    let hits: Vec<usize> = vs.iter().filter(|v| range.contains(v)).map(|v| orig[v - range.start]).collect();
    match hits[..] {
        [p, q] => Verdict::yes(pair(p, q)),
        _ => unmapped(),
    }
}

pub fn red_twocov_to_bip3dom(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::TwoCovering, Problem::BipartiteThreeDominatingSet);
    let (f2, orig) = match prepare_covering(f) {
        Prepared::Decided(v) => {
            let canon = Instance::Bipartite(bip3dom_gadget(&canonical_covering(false)));
            return ReductionRecord::decided(src, dst, &set_input(f), canon, v);
        }
        Prepared::Family(f2, orig) => (f2, orig),
    };
    let c0 = f2.ground_size + 1;
    let range = c0..c0 + f2.sets.len();
    ReductionRecord::new(
        src,
        dst,
        &set_input(f),
        Instance::Bipartite(bip3dom_gadget(&f2)),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Triple(a, b, c)),
            } => sets_in(&[*a, *b, *c], range.clone(), &orig),
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// The gadget without the pendant and without preprocessing. It is not a
/// sound reduction: on `X = {1, 2}`, `C = {{2}, {2}}` the triple
/// `(v0, 1, {2})` dominates although no pair covers. Kept to show why the
/// pendant and the near-full preprocessing exist.
pub fn red_twocov_to_bip3dom_bare(f: &SetFamilyInstance) -> ReductionRecord {
    let (k, m) = (f.ground_size, f.sets.len());
    let (v0, c0) = (k, k + 1);
    let mut edges = Vec::new();
    for (p, s) in f.sets.iter().enumerate() {
        edges.push((v0, c0 + p));
        edges.extend(s.iter().map(|&e| (e, c0 + p)));
    }
    let g = graph(c0 + m, &edges);
    let b = BipartiteGraph::new(g, (0..c0 + m).map(|v| v <= v0).collect()).expect("gadget is bipartite");
    let orig: Vec<usize> = (0..m).collect();
    ReductionRecord::new(
        Problem::TwoCovering,
        Problem::BipartiteThreeDominatingSet,
        &set_input(f),
        Instance::Bipartite(b),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Triple(a, b, c)),
            } => sets_in(&[*a, *b, *c], c0..c0 + m, &orig),
            other => other.clone(),
        }),
    )
}

fn membership_graph(f: &SetFamilyInstance) -> UndirectedGraph {
    let k = f.ground_size;
    let mut edges = Vec::new();
    for (p, s) in f.sets.iter().enumerate() {
        edges.extend(s.iter().map(|&e| (e, k + p)));
    }
    graph(k + f.sets.len(), &edges)
}

/// Elements and sets joined by membership; the subset to dominate is the
/// element side, in coverage mode.
pub fn red_twocov_to_subset2dom(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::TwoCovering, Problem::BipartiteSubsetTwoDominatingSet);
    let build = |f: &SetFamilyInstance| Instance::GraphSubset {
        graph: membership_graph(f),
        subset: (0..f.ground_size).collect(),
        exact: false,
    };
    let (f2, orig) = match prepare_covering(f) {
        Prepared::Decided(v) => {
            return ReductionRecord::decided(src, dst, &set_input(f), build(&canonical_covering(false)), v);
        }
        Prepared::Family(f2, orig) => (f2, orig),
    };
    let range = f2.ground_size..f2.ground_size + f2.sets.len();
    ReductionRecord::new(
        src,
        dst,
        &set_input(f),
        build(&f2),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(a, b)),
            } => sets_in(&[*a, *b], range.clone(), &orig),
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// One block per set, `k` chunks each, blocks separated by `000` in `s1`
/// and `111` in `s2`. Chunks are `01?01` in `s1` (`?` is 1 iff the element
/// is in the set) and `*1?*1` in `s2` (`?` is `*` iff it is). Aligned
/// blocks match fully exactly when the two sets cover the ground set, and
/// nothing else reaches length `5k`.
pub fn align_strings(f: &SetFamilyInstance) -> WildcardStringPair {
    let k = f.ground_size;
    let mut s1 = String::new();
    let mut s2 = String::new();
    for (p, s) in f.sets.iter().enumerate() {
        if p > 0 {
            s1.push_str("000");
            s2.push_str("111");
        }
        let mut inside = vec![false; k];
        for &e in s {
            inside[e] = true;
        }
        for &b in &inside {
            s1.push_str(if b { "01101" } else { "01001" });
            s2.push_str(if b { "*1**1" } else { "*11*1" });
        }
    }
    WildcardStringPair::new(&s1, &s2).expect("alphabet is 0, 1, *")
}

pub fn red_bigtwocov_to_localalign(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigTwoCovering, Problem::LocalStringAlign);
    let (m, k) = (f.sets.len(), f.ground_size);
    if m <= 1 || k == 0 {
        let v = if m <= 1 { Verdict::no() } else { Verdict::yes(Witness::Pair(0, 1)) };
        let canon = Instance::Strings(align_strings(&canonical_covering(false)));
        return ReductionRecord::decided(src, dst, &set_input(f), canon, v);
    }
    let block = 5 * k + 3;
    let sets = f.sets.clone();
    ReductionRecord::new(
        src,
        dst,
        &set_input(f),
        Instance::Strings(align_strings(f)),
        Box::new(move |v| match v {
            Verdict::Integer { value, .. } if *value < 5 * k as u64 => Verdict::no(),
            Verdict::Integer {
                witness: Some(Witness::Window { start1, start2, .. }),
                ..
            } => {
                let (p, q) = (start1 / block, start2 / block);
                // Aligning a block with itself means the set is everything.
                let q = if p == q { other_than(p) } else { q };
                if p < sets.len() && q < sets.len() {
                    Verdict::yes(pair(p, q))
                } else {
                    unmapped()
                }
            }
            _ => unmapped(),
        }),
    )
}

/// The bipartite double cover: `v` and `v'` for every vertex, with `v-w'`
/// for every edge `v-w`. Same-side neighborhoods copy those of `g`; a
/// cross-side domination needs an empty neighborhood, i.e. an isolated
/// vertex, which every other vertex dominates.
pub fn red_dominated_to_double_cover(g: &UndirectedGraph) -> ReductionRecord {
    let (src, dst) = (Problem::GraphDominatedVertex, Problem::BipGraphDominatedVertex);
    let n = g.vertex_count();
    let cover = |g: &UndirectedGraph| {
        let n = g.vertex_count();
        let edges: Vec<(usize, usize)> = g.edges().flat_map(|(a, b)| [(a, n + b), (b, n + a)]).collect();
        BipartiteGraph::new(graph(2 * n, &edges), (0..2 * n).map(|v| v < n).collect()).expect("cover is bipartite")
    };
    if n <= 1 {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        return ReductionRecord::decided(src, dst, &Instance::Graph(g.clone()), Instance::Bipartite(cover(&c5)), Verdict::no());
    }
    ReductionRecord::new(
        src,
        dst,
        &Instance::Graph(g.clone()),
        Instance::Bipartite(cover(g)),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(a, b)),
            } => {
                let (a, b) = (a % n, b % n);
                Verdict::yes(Witness::Pair(if a == b { other_than(b) } else { a }, b))
            }
            other => other.clone(),
        }),
    )
}

pub fn embed_bipartite_dominated(b: &BipartiteGraph) -> ReductionRecord {
    ReductionRecord::new(
        Problem::BipGraphDominatedVertex,
        Problem::GraphDominatedVertex,
        &Instance::Bipartite(b.clone()),
        Instance::Graph(b.graph.clone()),
        Box::new(|v| v.clone()),
    )
}

pub fn embed_bipartite_3dom(b: &BipartiteGraph) -> ReductionRecord {
    ReductionRecord::new(
        Problem::BipartiteThreeDominatingSet,
        Problem::ThreeDominatingSet,
        &Instance::Bipartite(b.clone()),
        Instance::Graph(b.graph.clone()),
        Box::new(|v| v.clone()),
    )
}

pub fn embed_split_diameter(s: &SplitGraph) -> ReductionRecord {
    ReductionRecord::new(
        Problem::SplitGraphDiameter2Or3,
        Problem::GraphDiameter2Or3,
        &Instance::Split(s.clone()),
        Instance::Graph(s.graph.clone()),
        Box::new(|v| v.clone()),
    )
}

/// Betweenness of one vertex, read off the all-vertices computation.
pub fn embed_betweenness(g: &UndirectedGraph, vertex: usize) -> ReductionRecord {
    ReductionRecord::new(
        Problem::BetweennessCentralityVertex,
        Problem::BetweennessCentrality,
        &Instance::GraphVertex {
            graph: g.clone(),
            vertex,
        },
        Instance::Graph(g.clone()),
        Box::new(move |v| match v {
            Verdict::Rationals(all) if vertex < all.len() => Verdict::Rational(all[vertex].clone()),
            other => other.clone(),
        }),
    )
}
