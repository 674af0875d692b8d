//! Reductions whose source and target are both set families (or close
//! relatives: split CNF, vector collections, bipartite neighborhoods).

use std::collections::{HashMap, HashSet};

use super::ReductionRecord;
use crate::graph::UndirectedGraph;
use crate::zoo::{
    family_to_vectors, is_subset, vectors_to_family, BigPromise, BipartiteGraph, Instance, Problem,
    SetFamilyInstance, SplitCnfInstance, VectorCollection, Verdict, Witness,
};

pub(crate) fn family(ground: usize, sets: Vec<Vec<usize>>) -> SetFamilyInstance {
    SetFamilyInstance::new(ground, sets).expect("constructed family is valid")
}

/// Claims the big promise when the default bound admits the family.
pub(crate) fn mark_big(mut f: SetFamilyInstance) -> SetFamilyInstance {
    f.big = BigPromise::default().admits(f.ground_size, f.sets.len());
    f
}

pub(crate) fn pair(a: usize, b: usize) -> Witness {
    Witness::Pair(a.min(b), a.max(b))
}

/// Positive verdict with no usable witness. Checkers reject it, so a
/// back-translation that cannot map a witness surfaces as a failure.
pub(crate) fn unmapped() -> Verdict {
    Verdict::Bool {
        answer: true,
        witness: None,
    }
}

/// Any index other than `p` (the family has at least two sets).
pub(crate) fn other_than(p: usize) -> usize {
    if p == 0 {
        1
    } else {
        0
    }
}

/// Small families with a fixed answer, used as canonical inputs when a
/// reduction decides an instance during preprocessing. Elements are all
/// covered, no set is empty or equal to the ground set, no set misses fewer
/// than two elements of a four-element ground set.
pub(crate) fn canonical_disjoint(yes: bool) -> SetFamilyInstance {
    if yes {
        family(4, vec![vec![0, 1], vec![2, 3]])
    } else {
        family(4, vec![vec![0, 1], vec![1, 2, 3]])
    }
}

pub(crate) fn canonical_covering(yes: bool) -> SetFamilyInstance {
    if yes {
        family(4, vec![vec![0, 1], vec![2, 3]])
    } else {
        family(4, vec![vec![0, 1], vec![0, 2]])
    }
}

/// Index of an empty set, if any.
pub(crate) fn empty_set(f: &SetFamilyInstance) -> Option<usize> {
    f.sets.iter().position(Vec::is_empty)
}

/// Drops ground elements contained in no set and renumbers the rest.
pub(crate) fn drop_uncovered(f: &SetFamilyInstance) -> SetFamilyInstance {
    let mut id = vec![usize::MAX; f.ground_size];
    for s in &f.sets {
        for &e in s {
            id[e] = 0;
        }
    }
    let mut next = 0;
    for slot in id.iter_mut().filter(|s| **s == 0) {
        *slot = next;
        next += 1;
    }
    let sets = f
        .sets
        .iter()
        .map(|s| s.iter().map(|&e| id[e]).collect())
        .collect();
    SetFamilyInstance {
        ground_size: next,
        sets,
        big: f.big,
    }
}

/// Common preprocessing for disjoint-pair sources: at most one set means
/// no pair; an empty set with a second set is a disjoint pair.
pub(crate) fn decide_disjoint_trivially(f: &SetFamilyInstance) -> Option<Verdict> {
    if f.sets.len() <= 1 {
        return Some(Verdict::no());
    }
    empty_set(f).map(|p| Verdict::yes(pair(p, other_than(p))))
}

fn set_instance(f: SetFamilyInstance) -> Instance {
    Instance::SetFamily(f)
}

/// Sets of clauses left unsatisfied by each evaluation, tagged `x1` for the
/// x-block and `x2` for the y-block so same-block sets always meet.
pub fn red_ksatstar_to_big_tds(i: &SplitCnfInstance) -> ReductionRecord {
    let c = i.clauses.len();
    let (x1, x2) = (c, c + 1);
    let mut sets = Vec::with_capacity(i.x_evals.len() + i.y_evals.len());
    for a in &i.x_evals {
        let mut s: Vec<usize> = (0..c).filter(|&k| !i.satisfied_by_x(k, a)).collect();
        s.push(x1);
        sets.push(s);
    }
    for b in &i.y_evals {
        let mut s: Vec<usize> = (0..c).filter(|&k| !i.satisfied_by_y(k, b)).collect();
        s.push(x2);
        sets.push(s);
    }
    let nx = i.x_evals.len();
    let out = mark_big(family(c + 2, sets));
    ReductionRecord::new(
        Problem::KSatStar,
        Problem::BigTwoDisjointSets,
        &Instance::SplitCnf(i.clone()),
        set_instance(out),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(p, q)),
            } if *p < nx && *q >= nx => Verdict::yes(Witness::Pair(*p, q - nx)),
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

fn code_bits(index: usize, k: usize, zero_base: usize, one_base: usize, out: &mut Vec<usize>) {
    for b in 0..k {
        out.push(if (index >> b) & 1 == 0 { zero_base + b } else { one_base + b });
    }
}

/// Original sets tagged with their index code over fresh `Y`, `Z`, and
/// complements carrying all of `Y` and `Z` plus an index code over `Y'`,
/// `Z'`. The only containments left are `C_p` inside the complement of a
/// set disjoint from it.
pub fn red_big_tds_to_big_sperner(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigTwoDisjointSets, Problem::BigSpernerFamily);
    let input = set_instance(f.clone());
    let m = f.sets.len();
    if m <= 1 {
        let v = Verdict::no();
        let canon = red_big_tds_to_big_sperner(&canonical_disjoint(false)).instance;
        return ReductionRecord::decided(src, dst, &input, canon, v);
    }
    let g = f.ground_size;
    let k = (usize::BITS - (m - 1).leading_zeros()).max(1) as usize;
    let (y, z, y2, z2) = (g, g + k, g + 2 * k, g + 3 * k);
    let mut sets = Vec::with_capacity(2 * m);
    for (p, s) in f.sets.iter().enumerate() {
        let mut a = s.clone();
        code_bits(p, k, y, z, &mut a);
        sets.push(a);
    }
    for (q, s) in f.sets.iter().enumerate() {
        let mut b = crate::zoo::complement(s, g);
        b.extend(y..y2);
        code_bits(q, k, y2, z2, &mut b);
        sets.push(b);
    }
    let out = mark_big(family(g + 4 * k, sets));
    ReductionRecord::new(
        src,
        dst,
        &input,
        set_instance(out),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(a, b)),
            } if *a < m && *b >= m => {
                let q = b - m;
                // C_a inside its own complement means C_a is empty.
                Verdict::yes(pair(*a, if q == *a { other_than(q) } else { q }))
            }
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// `A_p = C_p + x1 + {s_j : j <= |C_p|}` and
/// `B_q = (X - C_q) + x2 + {s_j : j >= |C_q|}`. The size ladder `s_j` makes
/// `A_p` and `B_q` disjoint exactly when `C_p` is a proper subset of `C_q`,
/// so a family with repeated sets is decided up front.
pub fn red_big_sperner_to_big_tds(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::BigSpernerFamily, Problem::BigTwoDisjointSets);
    let input = set_instance(f.clone());
    let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(f.sets.len());
    for (q, s) in f.sets.iter().enumerate() {
        if let Some(&p) = seen.get(s.as_slice()) {
            let canon = red_big_sperner_to_big_tds(&family(2, vec![vec![0], vec![0, 1]])).instance;
            return ReductionRecord::decided(src, dst, &input, canon, Verdict::yes(Witness::Pair(p, q)));
        }
        seen.insert(s, q);
    }
    let g = f.ground_size;
    let m = f.sets.len();
    let (x1, x2, s0) = (g, g + 1, g + 2);
    let mut sets = Vec::with_capacity(2 * m);
    for c in &f.sets {
        let mut a = c.clone();
        a.push(x1);
        a.extend(s0..=s0 + c.len());
        sets.push(a);
    }
    for c in &f.sets {
        let mut b = crate::zoo::complement(c, g);
        b.push(x2);
        b.extend(s0 + c.len()..=s0 + g);
        sets.push(b);
    }
    let out = mark_big(family(g + 3 + g, sets));
    ReductionRecord::new(
        src,
        dst,
        &input,
        set_instance(out),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(a, b)),
            } if *a < m && *b >= m => Verdict::yes(Witness::Pair(*a, b - m)),
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// Complements every set: `C, C'` are disjoint exactly when their
/// complements cover the ground set. Indices and witnesses are unchanged.
pub fn complement_family(source: Problem, target: Problem, f: &SetFamilyInstance) -> ReductionRecord {
    let out = f.complemented();
    ReductionRecord::new(source, target, &set_instance(f.clone()), set_instance(out), Box::new(|v| v.clone()))
}

/// A big instance is an instance of the general problem.
pub fn embed_big_into_general(source: Problem, target: Problem, f: &SetFamilyInstance) -> ReductionRecord {
    let mut out = f.clone();
    out.big = false;
    ReductionRecord::new(source, target, &set_instance(f.clone()), set_instance(out), Box::new(|v| v.clone()))
}

pub fn red_tds_to_orthogonal_vectors(f: &SetFamilyInstance) -> ReductionRecord {
    ReductionRecord::new(
        Problem::TwoDisjointSets,
        Problem::OrthogonalVectors,
        &set_instance(f.clone()),
        Instance::Vectors(family_to_vectors(f)),
        Box::new(|v| v.clone()),
    )
}

pub fn red_orthogonal_vectors_to_tds(v: &VectorCollection) -> ReductionRecord {
    ReductionRecord::new(
        Problem::OrthogonalVectors,
        Problem::TwoDisjointSets,
        &Instance::Vectors(v.clone()),
        set_instance(vectors_to_family(v)),
        Box::new(|v| v.clone()),
    )
}

/// The family has a containment pair exactly when some set is not among
/// the maximal ones; the back-translation finds a superset of the first
/// excluded set by one scan.
pub fn red_sperner_to_maximal(f: &SetFamilyInstance) -> ReductionRecord {
    let sets = f.sets.clone();
    ReductionRecord::new(
        Problem::SpernerFamily,
        Problem::MaximalElements,
        &set_instance(f.clone()),
        set_instance(f.clone()),
        Box::new(move |v| {
            let Verdict::Indices(ix) = v else {
                return unmapped();
            };
            let mut kept = vec![false; sets.len()];
            for &i in ix.iter().filter(|&&i| i < sets.len()) {
                kept[i] = true;
            }
            let Some(p) = kept.iter().position(|&k| !k) else {
                return Verdict::no();
            };
            (0..sets.len())
                .find(|&q| q != p && is_subset(&sets[p], &sets[q]))
                .map_or_else(unmapped, |q| Verdict::yes(Witness::Pair(p, q)))
        }),
    )
}

/// Maximal sets are those with no outgoing containment edge, except for
/// edges to an equal set of larger index.
pub fn red_maximal_to_subset_graph(f: &SetFamilyInstance) -> ReductionRecord {
    let m = f.sets.len();
    ReductionRecord::new(
        Problem::MaximalElements,
        Problem::SubsetGraph,
        &set_instance(f.clone()),
        set_instance(f.clone()),
        Box::new(move |v| {
            let Verdict::Edges(es) = v else {
                return Verdict::Indices(Vec::new());
            };
            let present: HashSet<(usize, usize)> = es.iter().copied().collect();
            let mut maximal = vec![true; m];
            for &(p, q) in es {
                if p < m && (q < p || !present.contains(&(q, p))) {
                    maximal[p] = false;
                }
            }
            Verdict::Indices((0..m).filter(|&p| maximal[p]).collect())
        }),
    )
}

/// Elements, then two markers `a`, `b` on one side; sets, mirrored elements
/// and a marker `a*` on the other. `N(C) = C + a`, `N(x') = {x, b}`,
/// `N(a*) = {a, b}`. Dominated pairs are then exactly the set pairs, once
/// uncovered elements are dropped and empty sets decided.
pub fn red_sperner_to_bip_dominated(f: &SetFamilyInstance) -> ReductionRecord {
    let (src, dst) = (Problem::SpernerFamily, Problem::BipGraphDominatedVertex);
    let input = set_instance(f.clone());
    let m = f.sets.len();
    let trivial = if m <= 1 {
        Some(Verdict::no())
    } else {
        empty_set(f).map(|p| Verdict::yes(Witness::Pair(p, other_than(p))))
    };
    if let Some(v) = trivial {
        let canon = red_sperner_to_bip_dominated(&family(2, vec![vec![0], vec![1]])).instance;
        return ReductionRecord::decided(src, dst, &input, canon, v);
    }
    let f2 = drop_uncovered(f);
    let k = f2.ground_size;
    let (a, b, c0) = (k, k + 1, k + 2);
    let (x0, astar) = (c0 + m, c0 + m + k);
    let n = astar + 1;
    let mut edges = Vec::new();
    for (p, s) in f2.sets.iter().enumerate() {
        edges.extend(s.iter().map(|&e| (e, c0 + p)));
        edges.push((a, c0 + p));
    }
    for e in 0..k {
        edges.push((e, x0 + e));
        edges.push((b, x0 + e));
    }
    edges.push((a, astar));
    edges.push((b, astar));
    let graph = UndirectedGraph::from_edges(n, edges).expect("gadget edges are distinct");
    let left = (0..n).map(|v| v < c0).collect();
    let out = BipartiteGraph::new(graph, left).expect("gadget is bipartite");
    ReductionRecord::new(
        src,
        dst,
        &input,
        Instance::Bipartite(out),
        Box::new(move |v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(big, small)),
            } if (c0..x0).contains(big) && (c0..x0).contains(small) => {
                Verdict::yes(Witness::Pair(small - c0, big - c0))
            }
            Verdict::Bool { answer: false, .. } => Verdict::no(),
            _ => unmapped(),
        }),
    )
}

/// One set per vertex: its neighborhood.
pub fn red_bip_dominated_to_sperner(b: &BipartiteGraph) -> ReductionRecord {
    let g = &b.graph;
    let sets = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
    ReductionRecord::new(
        Problem::BipGraphDominatedVertex,
        Problem::SpernerFamily,
        &Instance::Bipartite(b.clone()),
        set_instance(family(g.vertex_count(), sets)),
        Box::new(|v| match v {
            Verdict::Bool {
                answer: true,
                witness: Some(Witness::Pair(p, q)),
            } => Verdict::yes(Witness::Pair(*q, *p)),
            other => other.clone(),
        }),
    )
}
