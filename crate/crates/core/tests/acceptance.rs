//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs with `harness = false` so the lines are printed even when the run
//! succeeds. The process fails if any criterion fails, except for a failure
//! marked `known_gap`, which is printed as FAIL and
//! tolerated only in exactly its documented form.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use common::{closure_edges_oracle, comparability_oracle, hyperbolicity_oracle, transitivity_oracle, validates_witness};
use subquad_core::closure::{bitmatrix_closure, closure_of_general_digraph, gk_closure, hybrid_closure, is_transitive};
use subquad_core::comparability::{check_certificate, is_comparability, ComparabilityCertificate};
use subquad_core::graph::{DirectedGraph, UndirectedGraph};
use subquad_core::harness::{
    bench_closure, generate, random_dag, random_digraph, suite, BenchConfig, BenchFamily, GeneratorSpec, Plant,
};
use subquad_core::reductions::{
    back_translate_chain, closeness_gadget, closeness_threshold, red_twocov_to_bip3dom, red_twocov_to_bip3dom_bare,
    reduce, reduce_chain, registered_pairs, verify_reduction, SizeContract,
};
use subquad_core::rng::Rng;
use subquad_core::zoo::{farness, solve, Instance, Problem, SetFamilyInstance, Verdict};

const SEED: u64 = 0xacce_97ed;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the failure is the documented, tolerated one.
    known_gap: bool,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome {
        pass,
        detail,
        known_gap: false,
    }
}

/// 1000 DAGs, n <= 200, density swept; every method against BFS.
fn closure_correctness() -> Outcome {
    let start = Instant::now();
    let densities = [0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5];
    let mut r = Rng::new(SEED);
    let mut bad = 0;
    for i in 0..1000 {
        let n = r.range(1, 200);
        let g = random_dag(n, densities[i % densities.len()], &mut r);
        let want = closure_edges_oracle(&g);
        let mut results = vec![gk_closure(&g).unwrap(), bitmatrix_closure(&g).unwrap()];
        for omega in [2.5, 2.807, 3.0] {
            results.push(hybrid_closure(&g, omega).unwrap());
        }
        if results.iter().any(|c| !c.closure.edges().eq(want.iter().copied())) {
            bad += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad == 0 && secs < 60.0,
        format!("1000 DAGs x 5 method settings, {bad} mismatches, {secs:.1}s (limit 60s)"),
    )
}

/// 1000 digraphs, n <= 60: a third random, a third closures, a third
/// closures with one edge removed.
fn transitivity_checker() -> Outcome {
    let mut r = Rng::new(SEED + 2);
    let (mut bad, mut negatives) = (0, 0);
    for i in 0..1000 {
        let n = r.range(1, 60);
        let base = random_digraph(n, [0.01, 0.03, 0.1][i % 3], &mut r);
        let g = match i % 3 {
            0 => base,
            1 => closure_of_general_digraph(&base).closure,
            _ => {
                let c = closure_of_general_digraph(&base).closure;
                let mut edges: Vec<(usize, usize)> = c.edges().collect();
                if !edges.is_empty() {
                    edges.remove(r.index(edges.len()));
                }
                DirectedGraph::from_edges_with_loops(n, edges).unwrap()
            }
        };
        let c = is_transitive(&g);
        let oracle = transitivity_oracle(&g);
        let agrees = c.transitive == oracle.is_none();
        let witness_ok = c.witness.is_none_or(|w| validates_witness(&g, w));
        if !c.transitive {
            negatives += 1;
        }
        if !agrees || !witness_ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("1000 digraphs ({negatives} non-transitive), {bad} disagreements or bad witnesses"))
}

fn random_small_graph(r: &mut Rng) -> UndirectedGraph {
    let n = r.range(2, 9);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = r.range(0, pairs.len().min(14));
    let edges = r.sample(pairs.len(), m).into_iter().map(|i| pairs[i]);
    UndirectedGraph::from_edges(n, edges).unwrap()
}

fn orientation_is_transitive(v: &subquad_core::comparability::ComparabilityVerdict) -> bool {
    match &v.certificate {
        ComparabilityCertificate::Transitive(d) => is_transitive(d).transitive,
        _ => false,
    }
}

fn comparability_recognition() -> Outcome {
    let mut r = Rng::new(SEED + 3);
    let (mut corpus_bad, mut corpus_yes) = (0, 0);
    for _ in 0..500 {
        let g = random_small_graph(&mut r);
        let v = is_comparability(&g);
        let ok = v.is_comparability == comparability_oracle(&g)
            && check_certificate(&g, &v).is_ok()
            && (!v.is_comparability || orientation_is_transitive(&v));
        corpus_yes += v.is_comparability as usize;
        corpus_bad += !ok as usize;
    }
    let mut cycles_bad = Vec::new();
    for n in 3..=12 {
        let g = UndirectedGraph::from_edges(n, (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))).unwrap();
        let v = is_comparability(&g);
        let expect = n == 3 || n % 2 == 0;
        if v.is_comparability != expect || check_certificate(&g, &v).is_err() || (expect && !orientation_is_transitive(&v)) {
            cycles_bad.push(n);
        }
    }
    let mut bip_bad = 0;
    for _ in 0..200 {
        let (a, b) = (r.range(1, 15), r.range(1, 15));
        let p = 0.05 + 0.9 * r.below(1000) as f64 / 1000.0;
        let edges: Vec<(usize, usize)> =
            (0..a).flat_map(|u| (0..b).map(move |w| (u, a + w))).filter(|_| r.chance(p)).collect();
        let g = UndirectedGraph::from_edges(a + b, edges).unwrap();
        let v = is_comparability(&g);
        if !v.is_comparability || !orientation_is_transitive(&v) {
            bip_bad += 1;
        }
    }
    outcome(
        corpus_bad == 0 && cycles_bad.is_empty() && bip_bad == 0,
        format!(
            "corpus 500 (m<=14, {corpus_yes} comparability) {corpus_bad} wrong; cycles C3..C12 wrong at {cycles_bad:?}; bipartite 200, {bip_bad} wrong"
        ),
    )
}

fn sparse_scaling() -> Outcome {
    let report = bench_closure(&BenchConfig::powers(BenchFamily::Sparse, 10, 15, 1, SEED));
    let archive = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("sparse_closure_series.json");
    let archived = std::fs::write(&archive, report.to_json()).is_ok();
    for line in report.to_text().lines() {
        println!("       {line}");
    }
    match report.work_fit {
        Some(f) => outcome(
            f.exponent < 2.0 && archived,
            format!(
                "work exponent {:.4} (limit < 2.0), residual {:.4}, series archived at {}",
                f.exponent,
                f.residual,
                archive.display()
            ),
        ),
        None => outcome(false, "no fit".into()),
    }
}

fn reduction_soundness() -> Outcome {
    let start = Instant::now();
    let contract = SizeContract::default();
    let (mut failing, mut worst_ratio, mut worst_blowup, mut total) = (Vec::new(), 0f64, 0f64, 0);
    for &(src, dst) in registered_pairs() {
        let instances = match suite(src, SEED + 5, 500, 50, 50) {
            Ok(i) => i,
            Err(e) => {
                failing.push(format!("{src}->{dst} ({e})"));
                continue;
            }
        };
        let report = verify_reduction(src, dst, &instances, contract).unwrap();
        total += report.instances;
        worst_ratio = worst_ratio.max(report.max_contract_ratio);
        worst_blowup = worst_blowup.max(report.max_blowup);
        if !report.ok() || report.instances != 600 || report.max_contract_ratio > 1.0 {
            failing.push(format!("{src}->{dst}"));
        }
    }
    outcome(
        failing.is_empty(),
        format!(
            "{} edges x 600 instances ({total} total), failing {failing:?}, max blowup {worst_blowup:.2}, \
             max size/(32 n log^3 n) {worst_ratio:.4} (limit 1), {:.1}s",
            registered_pairs().len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn disjoint_pairs(f: &SetFamilyInstance) -> usize {
    let s = &f.sets;
    (0..s.len())
        .flat_map(|p| (p + 1..s.len()).map(move |q| (p, q)))
        .filter(|&(p, q)| !s[p].iter().any(|e| s[q].contains(e)))
        .count()
}

fn big_family(plant: Plant, seed: u64) -> SetFamilyInstance {
    match generate(&GeneratorSpec::randomized(Problem::BigTwoDisjointSets, plant, seed)).unwrap() {
        Instance::SetFamily(f) => f,
        _ => unreachable!(),
    }
}

/// Betweenness of x on the gadget, for families the reduction does not
/// decide up front.
fn gadget_betweenness(f: &SetFamilyInstance) -> Option<BigRational> {
    let rec = reduce(Problem::BigTwoDisjointSets, Problem::BetweennessCentralityVertex, &Instance::SetFamily(f.clone())).unwrap();
    if rec.decided {
        return None;
    }
    match solve(Problem::BetweennessCentralityVertex, &rec.instance).unwrap() {
        Verdict::Rational(b) => Some(b),
        _ => unreachable!(),
    }
}

fn betweenness_exactness() -> Outcome {
    let int = |k: usize| BigRational::from_integer(BigInt::from(k));
    let (mut no_ok, mut yes_ok, mut yes_threshold) = (0, 0, 0);
    let mut example = None;
    let (mut no_seen, mut yes_seen, mut seed) = (0, 0, SEED + 6);
    while no_seen < 200 || yes_seen < 200 {
        seed += 1;
        let plant = if no_seen < 200 { Plant::No } else { Plant::Yes };
        let f = big_family(plant, seed);
        let Some(b) = gadget_betweenness(&f) else { continue };
        let m = f.sets.len();
        if plant == Plant::No {
            no_seen += 1;
            no_ok += (b == int(m)) as usize;
        } else {
            yes_seen += 1;
            let pairs = disjoint_pairs(&f);
            if b == int(m + pairs) {
                yes_ok += 1;
            } else if example.is_none() {
                example = Some(format!("|C|={m}, pairs={pairs}, betweenness={b}"));
            }
            yes_threshold += (b > int(m)) as usize;
        }
    }
    let pass = no_ok == 200 && yes_ok == 200;
    Outcome {
        pass,
        known_gap: no_ok == 200 && yes_ok < 200 && yes_threshold == 200,
        detail: format!(
            "NO: {no_ok}/200 equal |C|; YES: {yes_ok}/200 equal |C|+#pairs, {yes_threshold}/200 exceed |C|; first mismatch {}",
            example.unwrap_or_else(|| "none".into())
        ),
    }
}

fn closeness_exactness() -> Outcome {
    // Worked example: X = {1,2,3}, C = {{1,2},{2,3}}.
    let ex = SetFamilyInstance::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
    let (g, owner) = closeness_gadget(&ex);
    let first = g.vertex_count() - owner.len();
    let far = farness(&g);
    let ex_far: Vec<u64> = (first..g.vertex_count()).map(|v| far[v].unwrap()).collect();
    let ex_ok = closeness_threshold(&ex) == 22 && ex_far.iter().all(|&x| x == 22);

    let (mut ok, mut seen, mut seed, mut pendants) = (0, 0, SEED + 7, 0);
    while seen < 200 {
        seed += 1;
        let f = big_family(Plant::No, seed);
        let rec = reduce(Problem::BigTwoDisjointSets, Problem::MinimumClosenessCentrality, &Instance::SetFamily(f)).unwrap();
        if rec.decided {
            continue;
        }
        seen += 1;
        let Instance::GraphThreshold { graph, threshold } = &rec.instance else { unreachable!() };
        let f_star = threshold.recip();
        let far = farness(graph);
        // V3 are exactly the pendant vertices.
        let v3: Vec<usize> = (0..graph.vertex_count()).filter(|&v| graph.degree(v) == 1).collect();
        pendants += v3.len();
        let all_equal = v3
            .iter()
            .all(|&v| far[v].is_some_and(|x| BigRational::from_integer(BigInt::from(x)) == f_star));
        ok += all_equal as usize;
    }
    outcome(
        ok == 200 && ex_ok,
        format!(
            "NO: {ok}/200 with every V3 farness = F* ({pendants} pendants); worked example F*={} pendant farness {ex_far:?} \
             (expected 22; the formula with constant -2 gives 24)",
            closeness_threshold(&ex)
        ),
    )
}

fn hyperbolicity_end_to_end() -> Outcome {
    let mut r = Rng::new(SEED + 8);
    let mut results = [(0, 0), (0, 0)];
    for (slot, plant) in [(0, Plant::Yes), (1, Plant::No)] {
        let mut seen = 0;
        while seen < 100 {
            let mut spec = GeneratorSpec::new(Problem::GraphDiameter2Or3, plant, r.next_u64());
            spec.n = r.range(4, 30);
            spec.density = 0.1 + 0.4 * r.below(1000) as f64 / 1000.0;
            let Ok(inst) = generate(&spec) else { continue };
            seen += 1;
            let rec = reduce(Problem::GraphDiameter2Or3, Problem::HyperbolicityFixedPair, &inst).unwrap();
            let Instance::GraphPair { graph, x, y } = &rec.instance else { unreachable!() };
            let Verdict::Integer { value, .. } = solve(Problem::HyperbolicityFixedPair, &rec.instance).unwrap() else {
                unreachable!()
            };
            let brute = hyperbolicity_oracle(graph, *x, *y);
            let side_ok = if plant == Plant::Yes { value <= 2 } else { value > 2 };
            results[slot].0 += (value == brute && side_ok) as usize;
            results[slot].1 = results[slot].1.max(graph.vertex_count());
        }
    }
    outcome(
        results[0].0 == 100 && results[1].0 == 100,
        format!(
            "diameter 2: {}/100 with value <= 2; diameter 3: {}/100 with value > 2; all matched brute force (largest H {} vertices)",
            results[0].0,
            results[1].0,
            results[0].1.max(results[1].1)
        ),
    )
}

fn covering_gadget_regression() -> Outcome {
    // X = {1,2} as {0,1}; C = {{2},{2}}.
    let f = SetFamilyInstance::new(2, vec![vec![1], vec![1]]).unwrap();
    let answer = |rec: subquad_core::reductions::ReductionRecord| {
        let v = solve(Problem::BipartiteThreeDominatingSet, &rec.instance).unwrap();
        rec.back_translate(&v).answer()
    };
    let patched = answer(red_twocov_to_bip3dom(&f));
    let bare = answer(red_twocov_to_bip3dom_bare(&f));
    let truth = solve(Problem::TwoCovering, &Instance::SetFamily(f)).unwrap().answer();
    outcome(
        patched == Some(false) && bare == Some(true) && truth == Some(false),
        format!("true answer {truth:?}; patched reduction {patched:?}; bare pendant-free variant {bare:?}"),
    )
}

fn composition_chain() -> Outcome {
    use Problem::*;
    let path = [KSatStar, BigTwoDisjointSets, BigSpernerFamily, SpernerFamily, MaximalElements, SubsetGraph];
    let instances = suite(KSatStar, SEED + 10, 100, 50, 50).unwrap();
    let (mut ok, mut yes) = (0, 0);
    for inst in &instances {
        let expected = solve(KSatStar, inst).unwrap().answer().unwrap();
        let chain = reduce_chain(&path, inst).unwrap();
        let last = &chain.last().unwrap().instance;
        let got = back_translate_chain(&chain, &solve(SubsetGraph, last).unwrap());
        yes += expected as usize;
        ok += (got.answer() == Some(expected)) as usize;
    }
    outcome(
        ok == instances.len() && instances.len() == 200,
        format!("{ok}/{} split-CNF instances preserved ({yes} satisfiable)", instances.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closure correctness", closure_correctness),
        ("transitivity checker", transitivity_checker),
        ("comparability recognition", comparability_recognition),
        ("sparse-closure scaling", sparse_scaling),
        ("reduction soundness", reduction_soundness),
        ("betweenness exactness", betweenness_exactness),
        ("closeness exactness", closeness_exactness),
        ("hyperbolicity end to end", hyperbolicity_end_to_end),
        ("two-covering gadget regression", covering_gadget_regression),
        ("composition chain", composition_chain),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && o.known_gap { " [known gap, see README]" } else { "" };
        println!("{tag} criterion {:>2} {name}: {}{note}", i + 1, o.detail);
        if !o.pass && !o.known_gap {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
