//! Seeded instance generators with planted answers.
//!
//! Planted instances are checked against the oracle solver before they are
//! returned; a plant that the oracle disagrees with is an error, never a
//! silently mislabeled instance.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{all_pairs_distances, DirectedGraph, UndirectedGraph};
use crate::rng::Rng;
use crate::zoo::{
    family_to_vectors, solve, BigPromise, BinaryMatrix, BinaryMatrixPair, BipartiteGraph, Instance, InstanceError,
    InstanceKind, Problem, SetFamilyInstance, SolveError, SplitCnfInstance, SplitGraph, Verdict, WildcardStringPair,
};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Plant {
    Yes,
    No,
    Random,
}

impl Plant {
    pub fn from_name(s: &str) -> Option<Plant> {
        match s {
            "yes" => Some(Plant::Yes),
            "no" => Some(Plant::No),
            "random" => Some(Plant::Random),
            _ => None,
        }
    }
}

/// What to generate. Fields a problem does not use are ignored.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GeneratorSpec {
    pub problem: Problem,
    pub plant: Plant,
    pub seed: u64,
    /// Vertices for graphs; rows for matrices; string length.
    pub n: usize,
    /// Ground set size; inner dimension for matrices; clique size for split
    /// graphs; x-variables for split CNF.
    pub ground: usize,
    /// Number of sets; columns for matrices; independent side for split
    /// graphs; y-variables for split CNF.
    pub sets: usize,
    pub density: f64,
    /// Evaluations per block for split CNF.
    pub evals: usize,
    pub clauses: usize,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("infeasible spec: {0}")]
    InfeasibleSpec(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

impl From<SolveError> for GenError {
    fn from(e: SolveError) -> Self {
        GenError::InfeasibleSpec(e.to_string())
    }
}

type Gen<T> = Result<T, GenError>;

fn infeasible<T>(msg: impl Into<String>) -> Gen<T> {
    Err(GenError::InfeasibleSpec(msg.into()))
}

impl GeneratorSpec {
    /// Fixed moderate sizes.
    pub fn new(problem: Problem, plant: Plant, seed: u64) -> Self {
        let big = problem.is_big();
        GeneratorSpec {
            problem,
            plant,
            seed,
            n: 10,
            ground: if big { 6 } else { 8 },
            sets: 12,
            density: 0.4,
            evals: 4,
            clauses: 6,
            width: 3,
        }
    }

    /// Sizes drawn from ranges small enough for the quadratic and cubic
    /// oracles, as used by the verification suites.
    pub fn randomized(problem: Problem, plant: Plant, seed: u64) -> Self {
        let mut r = Rng::new(seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut s = GeneratorSpec::new(problem, plant, seed);
        s.density = 0.15 + 0.7 * (r.below(1000) as f64 / 1000.0);
        s.n = r.range(4, 12);
        s.sets = r.range(2, 14);
        s.ground = r.range(1, 8);
        if problem.is_big() {
            s.sets = r.range(4, 16);
            let cap = (BigPromise::default().bound(s.sets) as usize).min(8);
            s.ground = r.range(cap.min(3), cap);
        }
        if matches!(
            problem,
            Problem::SpernerFamily | Problem::BigSpernerFamily | Problem::MaximalElements | Problem::SubsetGraph
        )
            && plant == Plant::No
        {
            s.ground = r.range(6, 8);
        }
        match problem.instance_kind() {
            InstanceKind::SplitCnf => {
                s.ground = r.range(1, 4);
                s.sets = r.range(1, 4);
                s.width = r.range(2, 3);
                s.clauses = r.range(1, 8);
                s.evals = r.range(1, 6);
            }
            InstanceKind::Split => {
                s.ground = r.range(if plant == Plant::No { 2 } else { 1 }, 6);
                s.sets = r.range(2, 8);
            }
            InstanceKind::Bipartite => {
                s.ground = r.range(2, 7);
                s.sets = r.range(2, 7);
            }
            InstanceKind::Matrices => {
                s.n = r.range(1, 8);
                s.ground = r.range(1, 8);
                s.sets = r.range(1, 8);
            }
            InstanceKind::Strings => s.n = r.range(1, 24),
            _ => {}
        }
        s
    }
}

/// Boolean reading of a verdict used for planting: decision answers as
/// they are; a non-maximal set, a containment edge, or a positive
/// betweenness count as yes.
pub fn planted_reading(problem: Problem, inst: &Instance, v: &Verdict) -> Option<bool> {
    match (problem, inst, v) {
        (_, _, Verdict::Bool { answer, .. }) => Some(*answer),
        (Problem::MaximalElements, Instance::SetFamily(f), Verdict::Indices(ix)) => Some(ix.len() < f.sets.len()),
        (Problem::SubsetGraph, _, Verdict::Edges(es)) => Some(!es.is_empty()),
        (Problem::BetweennessCentralityVertex, _, Verdict::Rational(b)) => Some(*b > BigRational::from_integer(0.into())),
        _ => None,
    }
}

pub fn generate(spec: &GeneratorSpec) -> Gen<Instance> {
    let mut r = Rng::new(spec.seed);
    let unplantable = matches!(
        spec.problem,
        Problem::LocalStringAlign | Problem::BetweennessCentrality | Problem::HyperbolicityFixedPair
    );
    if spec.plant != Plant::Random && unplantable {
        return infeasible(format!("{} has no planted answers", spec.problem));
    }
    let inst = build(spec, &mut r)?;
    if spec.plant != Plant::Random {
        let want = spec.plant == Plant::Yes;
        let v = solve(spec.problem, &inst)?;
        if planted_reading(spec.problem, &inst, &v) != Some(want) {
            return infeasible(format!("planted {:?} {} came out {v}", spec.plant, spec.problem));
        }
    }
    Ok(inst)
}

/// `random` unplanted, `yes` planted-yes and `no` planted-no instances,
/// each from its own derived seed and randomized sizes.
pub fn suite(problem: Problem, seed: u64, random: usize, yes: usize, no: usize) -> Gen<Vec<Instance>> {
    let mut out = Vec::with_capacity(random + yes + no);
    for (plant, count, tag) in [(Plant::Random, random, 1u64), (Plant::Yes, yes, 2), (Plant::No, no, 3)] {
        for i in 0..count as u64 {
            let s = seed
                .wrapping_mul(0x2545_f491_4f6c_dd1d)
                .wrapping_add(tag << 40)
                .wrapping_add(i);
            out.push(generate(&GeneratorSpec::randomized(problem, plant, s))?);
        }
    }
    Ok(out)
}

fn build(spec: &GeneratorSpec, r: &mut Rng) -> Gen<Instance> {
    use Problem::*;
    let p = spec.problem;
    Ok(match p {
        KSatStar => Instance::SplitCnf(ksat(spec, r)?),
        TwoDisjointSets | BigTwoDisjointSets => Instance::SetFamily(disjoint_family(spec, r)?),
        OrthogonalVectors => Instance::Vectors(family_to_vectors(&disjoint_family(spec, r)?)),
        SpernerFamily | BigSpernerFamily | MaximalElements | SubsetGraph => {
            Instance::SetFamily(sperner_family(spec, r)?)
        }
        TwoCovering | BigTwoCovering => Instance::SetFamily(covering_family(spec, r)?),
        GraphDominatedVertex => Instance::Graph(retry(spec, r, |r| {
            if spec.plant == Plant::No {
                // A long cycle has no dominated vertex; chords stay sparse.
                let n = spec.n.max(5);
                let ring = (0..n).map(|v| (v, (v + 1) % n));
                return Ok(with_edges(&random_graph(n, spec.density * 0.2, r), ring, None));
            }
            let g = random_graph(spec.n, spec.density, r);
            Ok(plant_dominated(spec, r, g))
        })?),
        BipGraphDominatedVertex | BipartiteThreeDominatingSet => Instance::Bipartite(retry(spec, r, |r| bipartite(spec, r))?),
        BetweennessCentrality => Instance::Graph(connected_graph(spec.n, spec.density, r)),
        BetweennessCentralityVertex => {
            let (graph, vertex) = retry(spec, r, |r| {
                let mut g = connected_graph(spec.n, spec.density, r);
                let v = r.index(g.vertex_count());
                if spec.plant == Plant::No {
                    g = make_simplicial(&g, v);
                }
                Ok((g, v))
            })?;
            Instance::GraphVertex { graph, vertex }
        }
        MinimumClosenessCentrality => {
            let g = connected_graph(spec.n, spec.density, r);
            let far = crate::zoo::farness(&g);
            let max = far.iter().map(|f| f.unwrap_or(0)).max().unwrap_or(0).max(1);
            let limit = match spec.plant {
                Plant::Yes => max - 1,
                Plant::No => max,
                Plant::Random => max - 1 + r.below(2),
            };
            if limit == 0 {
                return infeasible("graph too small for a closeness threshold");
            }
            Instance::GraphThreshold {
                graph: g,
                threshold: BigRational::new(BigInt::from(1), BigInt::from(limit)),
            }
        }
        GraphDiameter2Or3 => Instance::Graph(retry(spec, r, |r| diameter_graph(spec, r))?),
        SplitGraphDiameter2Or3 => Instance::Split(split_graph(spec, r)?),
        HyperbolicityFixedPair => {
            let g = connected_graph(spec.n.max(4), spec.density, r);
            let x = r.index(g.vertex_count());
            let y = (x + 1 + r.index(g.vertex_count() - 1)) % g.vertex_count();
            Instance::GraphPair { graph: g, x, y }
        }
        ThreeDominatingSet => Instance::Graph(retry(spec, r, |r| {
            let mut g = random_graph(spec.n.max(3), spec.density * 0.5, r);
            if spec.plant == Plant::Yes {
                g = plant_dominating(&g, r);
            }
            Ok(g)
        })?),
        BipartiteSubsetTwoDominatingSet => {
            let (graph, subset) = retry(spec, r, |r| {
                let b = bipartite(spec, r)?;
                let subset: Vec<usize> = (0..b.graph.vertex_count()).filter(|&v| b.left[v]).collect();
                Ok((b.graph, subset))
            })?;
            Instance::GraphSubset {
                graph,
                subset,
                exact: false,
            }
        }
        ZerosMatrixMultiplication => Instance::Matrices(retry(spec, r, |r| matrices(spec, r))?),
        LocalStringAlign => {
            let mut s = || -> String {
                (0..spec.n.max(1))
                    .map(|_| ['0', '1', '*'][r.index(3)])
                    .collect()
            };
            let (a, b) = (s(), s());
            Instance::Strings(WildcardStringPair::new(&a, &b)?)
        }
    })
}

/// Repeats `f` until the oracle agrees with the plant (or once, unplanted).
fn retry<T, F>(spec: &GeneratorSpec, r: &mut Rng, mut f: F) -> Gen<T>
where
    F: FnMut(&mut Rng) -> Gen<T>,
    T: Clone + Into<Instance>,
{
    if spec.plant == Plant::Random {
        return f(r);
    }
    let want = spec.plant == Plant::Yes;
    for _ in 0..500 {
        let t = f(r)?;
        let inst: Instance = t.clone().into();
        let v = solve(spec.problem, &inst)?;
        if planted_reading(spec.problem, &inst, &v) == Some(want) {
            return Ok(t);
        }
    }
    infeasible(format!("no planted {:?} {} found at this size", spec.plant, spec.problem))
}

impl From<UndirectedGraph> for Instance {
    fn from(g: UndirectedGraph) -> Self {
        Instance::Graph(g)
    }
}

impl From<BipartiteGraph> for Instance {
    fn from(b: BipartiteGraph) -> Self {
        Instance::Bipartite(b)
    }
}

impl From<BinaryMatrixPair> for Instance {
    fn from(m: BinaryMatrixPair) -> Self {
        Instance::Matrices(m)
    }
}

impl From<(UndirectedGraph, usize)> for Instance {
    fn from((graph, vertex): (UndirectedGraph, usize)) -> Self {
        Instance::GraphVertex { graph, vertex }
    }
}

impl From<(UndirectedGraph, Vec<usize>)> for Instance {
    fn from((graph, subset): (UndirectedGraph, Vec<usize>)) -> Self {
        Instance::GraphSubset {
            graph,
            subset,
            exact: false,
        }
    }
}

fn random_sets(r: &mut Rng, ground: usize, count: usize, density: f64) -> Vec<Vec<usize>> {
    (0..count).map(|_| r.subset(ground, density)).collect()
}

fn finish_family(spec: &GeneratorSpec, r: &mut Rng, mut sets: Vec<Vec<usize>>) -> Gen<SetFamilyInstance> {
    if spec.plant == Plant::Yes {
        r.shuffle(&mut sets);
    }
    let f = SetFamilyInstance::new(spec.ground, sets)?;
    if spec.problem.is_big() {
        return f
            .into_big(&BigPromise::default())
            .or_else(|e| infeasible(e.to_string()));
    }
    Ok(f)
}

fn two_indices(r: &mut Rng, m: usize) -> Gen<(usize, usize)> {
    if m < 2 {
        return infeasible("a planted pair needs two sets");
    }
    let s = r.sample(m, 2);
    Ok((s[0], s[1]))
}

/// Yes: remove the members of one set from another. No: a sentinel
/// element shared by every set.
fn disjoint_family(spec: &GeneratorSpec, r: &mut Rng) -> Gen<SetFamilyInstance> {
    let mut sets = random_sets(r, spec.ground, spec.sets, spec.density);
    match spec.plant {
        Plant::Yes => {
            let (p, q) = two_indices(r, sets.len())?;
            let cp: HashSet<usize> = sets[p].iter().copied().collect();
            sets[q].retain(|e| !cp.contains(e));
        }
        Plant::No => {
            if spec.ground == 0 {
                return infeasible("a sentinel needs a nonempty ground set");
            }
            let e = r.index(spec.ground);
            for s in &mut sets {
                if !s.contains(&e) {
                    s.push(e);
                }
            }
        }
        Plant::Random => {}
    }
    finish_family(spec, r, sets)
}

/// Yes: one set absorbs another. No: distinct sets of equal size.
fn sperner_family(spec: &GeneratorSpec, r: &mut Rng) -> Gen<SetFamilyInstance> {
    let (k, m) = (spec.ground, spec.sets);
    let sets = match spec.plant {
        Plant::Yes => {
            let mut sets = random_sets(r, k, m, spec.density);
            let (p, q) = two_indices(r, m)?;
            let extra = sets[p].clone();
            sets[q].extend(extra);
            sets[q].sort_unstable();
            sets[q].dedup();
            sets
        }
        Plant::No => {
            let size = k / 2;
            if binomial(k, size) < m as u128 {
                return infeasible(format!("only {} sets of size {size} over {k} elements", binomial(k, size)));
            }
            let mut seen = HashSet::new();
            let mut sets = Vec::with_capacity(m);
            while sets.len() < m {
                let s = r.sample(k, size);
                if seen.insert(s.clone()) {
                    sets.push(s);
                }
            }
            sets
        }
        Plant::Random => random_sets(r, k, m, spec.density),
    };
    finish_family(spec, r, sets)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Yes: one set is completed by another. No: an element no set contains.
fn covering_family(spec: &GeneratorSpec, r: &mut Rng) -> Gen<SetFamilyInstance> {
    let k = spec.ground;
    let mut sets = random_sets(r, k, spec.sets, spec.density);
    match spec.plant {
        Plant::Yes => {
            let (p, q) = two_indices(r, sets.len())?;
            let missing = crate::zoo::complement(&sets[p], k);
            sets[q].extend(missing);
            sets[q].sort_unstable();
            sets[q].dedup();
        }
        Plant::No => {
            if k == 0 {
                return infeasible("an uncoverable element needs a nonempty ground set");
            }
            let u = r.index(k);
            for s in &mut sets {
                s.retain(|&e| e != u);
            }
        }
        Plant::Random => {}
    }
    finish_family(spec, r, sets)
}

fn random_clause(r: &mut Rng, total: usize, width: usize) -> Vec<i64> {
    let w = r.range(1, width.min(total));
    r.sample(total, w)
        .into_iter()
        .map(|v| {
            let lit = v as i64 + 1;
            if r.chance(0.5) {
                lit
            } else {
                -lit
            }
        })
        .collect()
}

fn random_evals(r: &mut Rng, count: usize, width: usize) -> Vec<Vec<bool>> {
    (0..count).map(|_| (0..width).map(|_| r.chance(0.5)).collect()).collect()
}

/// Yes: a chosen pair of evaluations satisfies every clause, after flipping
/// one literal per falsified clause. No: resampled until no pair works,
/// falling back to the contradictory unit clauses `x1` and `-x1`.
fn ksat(spec: &GeneratorSpec, r: &mut Rng) -> Gen<SplitCnfInstance> {
    let (nx, ny) = (spec.ground.max(1), spec.sets.max(1));
    let total = nx + ny;
    let width = spec.width.max(1);
    let attempts = if spec.plant == Plant::No { 100 } else { 1 };
    for _ in 0..attempts {
        let mut clauses: Vec<Vec<i64>> = (0..spec.clauses).map(|_| random_clause(r, total, width)).collect();
        let xe = random_evals(r, spec.evals.max(1), nx);
        let ye = random_evals(r, spec.evals.max(1), ny);
        if spec.plant == Plant::Yes {
            let (a, b) = (&xe[r.index(xe.len())], &ye[r.index(ye.len())]);
            let value = |l: i64| {
                let v = l.unsigned_abs() as usize - 1;
                let bit = if v < nx { a[v] } else { b[v - nx] };
                bit == (l > 0)
            };
            for c in &mut clauses {
                if !c.iter().any(|&l| value(l)) {
                    let i = r.index(c.len());
                    c[i] = -c[i];
                }
            }
        }
        let inst = SplitCnfInstance::new(nx, ny, width, clauses, xe, ye)?;
        if spec.plant != Plant::No || solve_bool(Problem::KSatStar, &Instance::SplitCnf(inst.clone()))? == Some(false) {
            return Ok(inst);
        }
    }
    let mut inst = SplitCnfInstance::new(
        nx,
        ny,
        width,
        vec![vec![1], vec![-1]],
        random_evals(r, spec.evals.max(1), nx),
        random_evals(r, spec.evals.max(1), ny),
    )?;
    inst.clauses.extend((0..spec.clauses).map(|_| random_clause(r, total, width)));
    Ok(inst)
}

fn solve_bool(p: Problem, inst: &Instance) -> Gen<Option<bool>> {
    Ok(solve(p, inst)?.answer())
}

pub fn random_graph(n: usize, p: f64, r: &mut Rng) -> UndirectedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.chance(p) {
                edges.push((a, b));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).expect("distinct edges")
}

/// A random graph plus a random spanning tree, so it is connected.
pub fn connected_graph(n: usize, p: f64, r: &mut Rng) -> UndirectedGraph {
    let n = n.max(2);
    let mut order: Vec<usize> = (0..n).collect();
    r.shuffle(&mut order);
    let mut edges: Vec<(usize, usize)> = random_graph(n, p, r).edges().collect();
    for i in 1..n {
        let (a, b) = (order[i], order[r.index(i)]);
        edges.push((a.min(b), a.max(b)));
    }
    UndirectedGraph::from_edges_dedup(n, edges).expect("valid edges")
}

/// Random DAG: each pair is an edge with probability `p`, directed along a
/// random hidden order so vertex ids are not already topological.
pub fn random_dag(n: usize, p: f64, r: &mut Rng) -> DirectedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    r.shuffle(&mut order);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.chance(p) {
                edges.push((order[a], order[b]));
            }
        }
    }
    DirectedGraph::from_edges(n, edges).expect("distinct edges")
}

/// Random digraph without self-loops; each ordered pair with probability `p`.
pub fn random_digraph(n: usize, p: f64, r: &mut Rng) -> DirectedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && r.chance(p) {
                edges.push((a, b));
            }
        }
    }
    DirectedGraph::from_edges(n, edges).expect("distinct edges")
}

fn with_edges(g: &UndirectedGraph, extra: impl IntoIterator<Item = (usize, usize)>, drop: Option<(usize, usize)>) -> UndirectedGraph {
    let mut edges: Vec<(usize, usize)> = g.edges().filter(|&e| Some(e) != drop).collect();
    edges.extend(extra.into_iter().filter(|&(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))));
    UndirectedGraph::from_edges_dedup(g.vertex_count(), edges).expect("valid edges")
}

/// Makes `N(v)` contain `N(w)` for a random pair.
fn plant_dominated(spec: &GeneratorSpec, r: &mut Rng, g: UndirectedGraph) -> UndirectedGraph {
    if spec.plant != Plant::Yes || g.vertex_count() < 2 {
        return g;
    }
    let s = r.sample(g.vertex_count(), 2);
    let (v, w) = (s[0], s[1]);
    let extra: Vec<(usize, usize)> = g.neighbors(w).iter().map(|&u| (v, u)).collect();
    with_edges(&g, extra, Some((v.min(w), v.max(w))))
}

/// Turns the neighborhood of `v` into a clique, so no shortest path
/// passes through `v`.
fn make_simplicial(g: &UndirectedGraph, v: usize) -> UndirectedGraph {
    let nb = g.neighbors(v);
    let extra: Vec<(usize, usize)> = nb
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| nb[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    with_edges(g, extra, None)
}

/// Attaches every vertex to one of three chosen vertices.
fn plant_dominating(g: &UndirectedGraph, r: &mut Rng) -> UndirectedGraph {
    let t = r.sample(g.vertex_count(), 3);
    let extra: Vec<(usize, usize)> = (0..g.vertex_count())
        .filter(|v| !t.contains(v))
        .map(|v| (t[r.index(3)], v))
        .collect();
    with_edges(g, extra, None)
}

fn bipartite(spec: &GeneratorSpec, r: &mut Rng) -> Gen<BipartiteGraph> {
    let (mut a, mut b) = (spec.ground.max(1), spec.sets.max(1));
    let mut p = spec.density;
    let mut edges = Vec::new();
    // Containment-free base for the dominated-vertex no case: an even
    // cycle, plus sparse chords.
    if spec.problem == Problem::BipGraphDominatedVertex && spec.plant == Plant::No {
        let t = a.max(b).max(3);
        (a, b, p) = (t, t, p * 0.3);
        for i in 0..t {
            edges.push((i, t + i));
            edges.push((i, t + (i + 1) % t));
        }
    }
    if spec.problem == Problem::BipartiteThreeDominatingSet && spec.plant == Plant::No {
        (a, b, p) = (a.max(3), b.max(3), p * 0.3);
    }
    if spec.problem == Problem::BipartiteSubsetTwoDominatingSet && spec.plant == Plant::No {
        (a, p) = (a.max(4), p * 0.4);
    }
    let n = a + b;
    for u in 0..a {
        for w in a..n {
            if r.chance(p) {
                edges.push((u, w));
            }
        }
    }
    if spec.plant == Plant::Yes {
        match spec.problem {
            Problem::BipGraphDominatedVertex if a >= 2 => {
                let s = r.sample(a, 2);
                let nb: Vec<usize> = edges.iter().filter(|e| e.0 == s[1]).map(|e| e.1).collect();
                edges.extend(nb.into_iter().map(|w| (s[0], w)));
            }
            Problem::BipartiteThreeDominatingSet => {
                let (u, w) = (r.index(a), a + r.index(b));
                edges.extend((a..n).map(|x| (u, x)));
                edges.extend((0..a).map(|x| (x, w)));
            }
            Problem::BipartiteSubsetTwoDominatingSet if b >= 2 => {
                let s = r.sample(b, 2);
                let split = r.index(a + 1);
                edges.extend((0..split).map(|x| (x, a + s[0])));
                edges.extend((split..a).map(|x| (x, a + s[1])));
            }
            _ => {}
        }
    }
    let g = UndirectedGraph::from_edges_dedup(n, edges)?;
    Ok(BipartiteGraph::new(g, (0..n).map(|v| v < a).collect())?)
}

/// Connected graphs of diameter 2 or 3; yes means diameter 2. A universal
/// vertex is added for yes, a pendant path end for no.
fn diameter_graph(spec: &GeneratorSpec, r: &mut Rng) -> Gen<UndirectedGraph> {
    let n = spec.n.max(4);
    for _ in 0..200 {
        let mut g = connected_graph(n, spec.density.max(0.3), r);
        if spec.plant == Plant::Yes {
            let u = r.index(n);
            g = with_edges(&g, (0..n).map(|v| (u, v)), None);
        }
        if spec.plant == Plant::No {
            // Separate a pair: no edge and no common neighbor.
            let s = r.sample(n, 2);
            let (u, v) = (s[0], s[1]);
            let nu = g.neighbors(u).to_vec();
            let keep: Vec<(usize, usize)> = g
                .edges()
                .filter(|&(a, b)| {
                    let touches_v = a == v || b == v;
                    let other = if a == v { b } else { a };
                    !((a, b) == (u, v) || touches_v && nu.contains(&other))
                })
                .collect();
            g = UndirectedGraph::from_edges(n, keep)?;
        }
        let d = all_pairs_distances(&g).diameter();
        if matches!(d, Some(2) | Some(3)) {
            return Ok(g);
        }
    }
    infeasible("no graph of diameter 2 or 3 found")
}

/// Clique `0..k` and independent vertices with nonempty neighborhoods in it.
/// Yes (diameter 2): all neighborhoods share a clique vertex. No (diameter
/// 3): two neighborhoods are disjoint.
fn split_graph(spec: &GeneratorSpec, r: &mut Rng) -> Gen<SplitGraph> {
    let (k, m) = (spec.ground.max(1), spec.sets.max(2));
    if spec.plant == Plant::No && k < 2 {
        return infeasible("disjoint neighborhoods need a clique of two");
    }
    let mut nbs: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let mut s = r.subset(k, spec.density);
            if s.is_empty() {
                s.push(r.index(k));
            }
            s
        })
        .collect();
    match spec.plant {
        Plant::Yes => {
            let c = r.index(k);
            for s in &mut nbs {
                if !s.contains(&c) {
                    s.push(c);
                }
            }
        }
        Plant::No => {
            let (p, q) = two_indices(r, m)?;
            let cut = r.range(1, k - 1);
            nbs[p].retain(|&e| e < cut);
            nbs[q].retain(|&e| e >= cut);
            if nbs[p].is_empty() {
                nbs[p].push(r.index(cut));
            }
            if nbs[q].is_empty() {
                nbs[q].push(cut + r.index(k - cut));
            }
        }
        Plant::Random => {}
    }
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b));
        }
    }
    for (p, s) in nbs.iter().enumerate() {
        edges.extend(s.iter().map(|&e| (e, k + p)));
    }
    let g = UndirectedGraph::from_edges_dedup(k + m, edges)?;
    let d = all_pairs_distances(&g).diameter();
    if !matches!(d, Some(2) | Some(3)) {
        return infeasible(format!("split graph has diameter {d:?}"));
    }
    Ok(SplitGraph::new(g, (0..k + m).map(|v| v < k).collect())?)
}

/// Yes: row `i` of the left factor and column `j` of the right one share
/// no index. No: resampled, with a shared all-ones index as the fallback.
fn matrices(spec: &GeneratorSpec, r: &mut Rng) -> Gen<BinaryMatrixPair> {
    let (rows, inner, cols) = (spec.n.max(1), spec.ground.max(1), spec.sets.max(1));
    let mut left: Vec<Vec<usize>> = (0..rows).map(|_| r.subset(inner, spec.density)).collect();
    let mut right: Vec<Vec<usize>> = (0..inner).map(|_| r.subset(cols, spec.density)).collect();
    match spec.plant {
        Plant::Yes => {
            let (i, j) = (r.index(rows), r.index(cols));
            for &k in &left[i] {
                right[k].retain(|&c| c != j);
            }
        }
        Plant::No if r.chance(0.5) => {
            let k = r.index(inner);
            for row in &mut left {
                if !row.contains(&k) {
                    row.push(k);
                }
            }
            right[k] = (0..cols).collect();
        }
        _ => {}
    }
    Ok(BinaryMatrixPair::new(
        BinaryMatrix::new(rows, inner, left)?,
        BinaryMatrix::new(inner, cols, right)?,
    )?)
}
