//! Instance transformations between zoo problems, each paired with a
//! translation of the target's verdict back into a verdict for the source.
//!
//! A reduction may decide an instance outright during preprocessing (for
//! example a family containing the empty set has a disjoint pair whenever it
//! has two members). It then emits a fixed canonical target instance and a
//! back-translation that ignores the target verdict; `decided` is set on the
//! record so reports can count these.

mod graphs;
mod sets;

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::zoo::{check_verdict, solve, Instance, InstanceKind, Problem, Verdict};

pub use graphs::*;
pub use sets::*;

pub type BackTranslate = Box<dyn Fn(&Verdict) -> Verdict + Send + Sync>;

pub struct ReductionRecord {
    pub source: Problem,
    pub target: Problem,
    pub instance: Instance,
    pub size_in: usize,
    pub size_out: usize,
    /// Preprocessing answered the source directly.
    pub decided: bool,
    back: BackTranslate,
}

impl ReductionRecord {
    pub(crate) fn new(
        source: Problem,
        target: Problem,
        input: &Instance,
        instance: Instance,
        back: BackTranslate,
    ) -> Self {
        ReductionRecord {
            source,
            target,
            size_in: input.size(),
            size_out: instance.size(),
            instance,
            decided: false,
            back,
        }
    }

    /// A record for an input already answered by preprocessing. `canonical`
    /// is any valid target instance; its verdict is ignored.
    pub(crate) fn decided(
        source: Problem,
        target: Problem,
        input: &Instance,
        canonical: Instance,
        verdict: Verdict,
    ) -> Self {
        let mut r = Self::new(source, target, input, canonical, Box::new(move |_| verdict.clone()));
        r.decided = true;
        r
    }

    pub fn back_translate(&self, target_verdict: &Verdict) -> Verdict {
        (self.back)(target_verdict)
    }

    pub fn blowup(&self) -> f64 {
        self.size_out as f64 / self.size_in.max(1) as f64
    }
}

impl std::fmt::Debug for ReductionRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReductionRecord")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("size_in", &self.size_in)
            .field("size_out", &self.size_out)
            .field("decided", &self.decided)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no reduction registered from {0} to {1}")]
    UnknownReductionPair(Problem, Problem),
    #[error("{problem} expects a {expected:?} instance, got a {got}")]
    WrongInstance {
        problem: Problem,
        expected: InstanceKind,
        got: &'static str,
    },
}

/// `size_out <= c * size_in * log2(2 + size_in)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeContract {
    pub c: f64,
    pub k: i32,
}

impl Default for SizeContract {
    fn default() -> Self {
        SizeContract { c: 32.0, k: 3 }
    }
}

impl SizeContract {
    pub fn bound(&self, size_in: usize) -> f64 {
        self.c * size_in as f64 * (2.0 + size_in as f64).log2().powi(self.k)
    }

    pub fn admits(&self, size_in: usize, size_out: usize) -> bool {
        size_out as f64 <= self.bound(size_in)
    }
}

use Problem::*;

const PAIRS: [(Problem, Problem); 27] = [
    (KSatStar, BigTwoDisjointSets),
    (BigTwoDisjointSets, BigSpernerFamily),
    (BigSpernerFamily, BigTwoDisjointSets),
    (BigTwoDisjointSets, BigTwoCovering),
    (BigTwoCovering, BigTwoDisjointSets),
    (BigTwoDisjointSets, TwoDisjointSets),
    (BigSpernerFamily, SpernerFamily),
    (BigTwoCovering, TwoCovering),
    (BigTwoDisjointSets, BetweennessCentralityVertex),
    (BigTwoDisjointSets, MinimumClosenessCentrality),
    (BigTwoDisjointSets, SplitGraphDiameter2Or3),
    (BigTwoDisjointSets, ZerosMatrixMultiplication),
    (BigTwoCovering, LocalStringAlign),
    (TwoDisjointSets, OrthogonalVectors),
    (OrthogonalVectors, TwoDisjointSets),
    (SpernerFamily, BipGraphDominatedVertex),
    (BipGraphDominatedVertex, SpernerFamily),
    (SpernerFamily, MaximalElements),
    (MaximalElements, SubsetGraph),
    (BipGraphDominatedVertex, GraphDominatedVertex),
    (GraphDominatedVertex, BipGraphDominatedVertex),
    (BetweennessCentralityVertex, BetweennessCentrality),
    (SplitGraphDiameter2Or3, GraphDiameter2Or3),
    (GraphDiameter2Or3, HyperbolicityFixedPair),
    (TwoCovering, BipartiteThreeDominatingSet),
    (TwoCovering, BipartiteSubsetTwoDominatingSet),
    (BipartiteThreeDominatingSet, ThreeDominatingSet),
];

/// Every (source, target) pair [`reduce`] accepts.
pub fn registered_pairs() -> &'static [(Problem, Problem)] {
    &PAIRS
}

pub fn is_registered(source: Problem, target: Problem) -> bool {
    PAIRS.contains(&(source, target))
}

fn wrong(problem: Problem, got: &Instance) -> ReductionError {
    ReductionError::WrongInstance {
        problem,
        expected: problem.instance_kind(),
        got: got.kind_name(),
    }
}

/// Applies the registered reduction from `source` to `target`.
pub fn reduce(source: Problem, target: Problem, inst: &Instance) -> Result<ReductionRecord, ReductionError> {
    if !is_registered(source, target) {
        return Err(ReductionError::UnknownReductionPair(source, target));
    }
    if InstanceKind::of(inst) != source.instance_kind() {
        return Err(wrong(source, inst));
    }
    let rec = match (source, target, inst) {
        (KSatStar, _, Instance::SplitCnf(i)) => red_ksatstar_to_big_tds(i),
        (BigTwoDisjointSets, BigSpernerFamily, Instance::SetFamily(f)) => red_big_tds_to_big_sperner(f),
        (BigSpernerFamily, BigTwoDisjointSets, Instance::SetFamily(f)) => red_big_sperner_to_big_tds(f),
        (BigTwoDisjointSets | BigTwoCovering, BigTwoCovering | BigTwoDisjointSets, Instance::SetFamily(f)) => {
            complement_family(source, target, f)
        }
        (BigTwoDisjointSets | BigSpernerFamily | BigTwoCovering, _, Instance::SetFamily(f))
            if !target.is_big() && target.instance_kind() == InstanceKind::SetFamily =>
        {
            embed_big_into_general(source, target, f)
        }
        (BigTwoDisjointSets, BetweennessCentralityVertex, Instance::SetFamily(f)) => red_big_tds_to_betweenness(f),
        (BigTwoDisjointSets, MinimumClosenessCentrality, Instance::SetFamily(f)) => red_big_tds_to_closeness(f),
        (BigTwoDisjointSets, SplitGraphDiameter2Or3, Instance::SetFamily(f)) => red_big_tds_to_split_diameter(f),
        (BigTwoDisjointSets, ZerosMatrixMultiplication, Instance::SetFamily(f)) => red_big_tds_to_matzero(f),
        (BigTwoCovering, LocalStringAlign, Instance::SetFamily(f)) => red_bigtwocov_to_localalign(f),
        (TwoDisjointSets, OrthogonalVectors, Instance::SetFamily(f)) => red_tds_to_orthogonal_vectors(f),
        (OrthogonalVectors, TwoDisjointSets, Instance::Vectors(v)) => red_orthogonal_vectors_to_tds(v),
        (SpernerFamily, BipGraphDominatedVertex, Instance::SetFamily(f)) => red_sperner_to_bip_dominated(f),
        (BipGraphDominatedVertex, SpernerFamily, Instance::Bipartite(b)) => red_bip_dominated_to_sperner(b),
        (SpernerFamily, MaximalElements, Instance::SetFamily(f)) => red_sperner_to_maximal(f),
        (MaximalElements, SubsetGraph, Instance::SetFamily(f)) => red_maximal_to_subset_graph(f),
        (BipGraphDominatedVertex, GraphDominatedVertex, Instance::Bipartite(b)) => embed_bipartite_dominated(b),
        (GraphDominatedVertex, BipGraphDominatedVertex, Instance::Graph(g)) => red_dominated_to_double_cover(g),
        (BetweennessCentralityVertex, BetweennessCentrality, Instance::GraphVertex { graph, vertex }) => {
            embed_betweenness(graph, *vertex)
        }
        (SplitGraphDiameter2Or3, GraphDiameter2Or3, Instance::Split(s)) => embed_split_diameter(s),
        (GraphDiameter2Or3, HyperbolicityFixedPair, Instance::Graph(g)) => red_diam_to_hyperbolicity(g),
        (TwoCovering, BipartiteThreeDominatingSet, Instance::SetFamily(f)) => red_twocov_to_bip3dom(f),
        (TwoCovering, BipartiteSubsetTwoDominatingSet, Instance::SetFamily(f)) => red_twocov_to_subset2dom(f),
        (BipartiteThreeDominatingSet, ThreeDominatingSet, Instance::Bipartite(b)) => embed_bipartite_3dom(b),
        _ => return Err(wrong(source, inst)),
    };
    Ok(rec)
}

/// Reduces along `path` (at least two problems), one record per step.
pub fn reduce_chain(path: &[Problem], inst: &Instance) -> Result<Vec<ReductionRecord>, ReductionError> {
    let mut out: Vec<ReductionRecord> = Vec::new();
    for w in path.windows(2) {
        let rec = {
            let cur = out.last().map(|r| &r.instance).unwrap_or(inst);
            reduce(w[0], w[1], cur)?
        };
        out.push(rec);
    }
    Ok(out)
}

/// Translates a verdict for the last problem of a chain back to the first.
pub fn back_translate_chain(chain: &[ReductionRecord], verdict: &Verdict) -> Verdict {
    chain
        .iter()
        .rev()
        .fold(verdict.clone(), |v, r| r.back_translate(&v))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyFailure {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub source: String,
    pub target: String,
    pub instances: usize,
    pub passed: usize,
    pub yes_instances: usize,
    pub decided: usize,
    pub max_blowup: f64,
    /// Largest `size_out / bound(size_in)`; at most 1 when the contract holds.
    pub max_contract_ratio: f64,
    pub contract: SizeContract,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "reduction {} -> {}", self.source, self.target)?;
        writeln!(f, "instances {} passed {} yes {} decided {}", self.instances, self.passed, self.yes_instances, self.decided)?;
        writeln!(f, "max blowup {:.3} contract ratio {:.4}", self.max_blowup, self.max_contract_ratio)?;
        for fail in &self.failures {
            writeln!(f, "failure {}: {}", fail.index, fail.reason)?;
        }
        write!(f, "{}", if self.ok() { "PASS" } else { "FAIL" })
    }
}

struct Outcome {
    yes: bool,
    decided: bool,
    blowup: f64,
    ratio: f64,
}

fn verify_one<F>(source: Problem, target: Problem, reducer: &F, inst: &Instance, contract: &SizeContract) -> Result<Outcome, String>
where
    F: Fn(&Instance) -> Result<ReductionRecord, ReductionError>,
{
    let expected = solve(source, inst).map_err(|e| format!("source solver: {e}"))?;
    let rec = reducer(inst).map_err(|e| format!("reduction: {e}"))?;
    let ratio = rec.size_out as f64 / contract.bound(rec.size_in).max(f64::MIN_POSITIVE);
    if !contract.admits(rec.size_in, rec.size_out) {
        return Err(format!("size {} -> {} breaks the contract", rec.size_in, rec.size_out));
    }
    let got = solve(target, &rec.instance).map_err(|e| format!("target solver: {e}"))?;
    check_verdict(target, &rec.instance, &got).map_err(|e| format!("target witness: {e}"))?;
    let back = rec.back_translate(&got);
    if !back.same_answer(&expected) {
        return Err(format!("answer mismatch: source {expected}, back-translated {back}"));
    }
    // Value-only targets carry no witness to translate.
    let value_only = matches!(got, Verdict::Rational(_) | Verdict::Rationals(_));
    let unwitnessed = matches!(back, Verdict::Bool { answer: true, witness: None });
    if !(value_only && unwitnessed) {
        check_verdict(source, inst, &back).map_err(|e| format!("back-translated witness: {e}"))?;
    }
    Ok(Outcome {
        yes: crate::harness::gen::planted_reading(source, inst, &expected).unwrap_or(false),
        decided: rec.decided,
        blowup: rec.blowup(),
        ratio,
    })
}

/// Checks `reducer` as a reduction from `source` to `target` on every
/// instance: answers agree after back-translation, witnesses on both sides
/// validate, and the size contract holds. Instances are processed in
/// parallel; a panic fails only its own instance.
pub fn verify_with<F>(source: Problem, target: Problem, reducer: F, instances: &[Instance], contract: SizeContract) -> VerifyReport
where
    F: Fn(&Instance) -> Result<ReductionRecord, ReductionError> + Sync,
{
    let results: Vec<Result<Outcome, String>> = instances
        .par_iter()
        .map(|inst| {
            catch_unwind(AssertUnwindSafe(|| verify_one(source, target, &reducer, inst, &contract)))
                .unwrap_or_else(|p| {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_default();
                    Err(format!("panic: {msg}"))
                })
        })
        .collect();
    let mut report = VerifyReport {
        source: source.name().into(),
        target: target.name().into(),
        instances: instances.len(),
        passed: 0,
        yes_instances: 0,
        decided: 0,
        max_blowup: 0.0,
        max_contract_ratio: 0.0,
        contract,
        failures: Vec::new(),
    };
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(o) => {
                report.passed += 1;
                report.yes_instances += o.yes as usize;
                report.decided += o.decided as usize;
                report.max_blowup = report.max_blowup.max(o.blowup);
                report.max_contract_ratio = report.max_contract_ratio.max(o.ratio);
            }
            Err(reason) => report.failures.push(VerifyFailure { index, reason }),
        }
    }
    report
}

/// [`verify_with`] using the registered reduction.
pub fn verify_reduction(source: Problem, target: Problem, instances: &[Instance], contract: SizeContract) -> Result<VerifyReport, ReductionError> {
    if !is_registered(source, target) {
        return Err(ReductionError::UnknownReductionPair(source, target));
    }
    Ok(verify_with(source, target, |i| reduce(source, target, i), instances, contract))
}
