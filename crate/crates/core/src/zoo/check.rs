//! Witness checkers. They share no code with the solvers: each recomputes
//! the claimed property from scratch with marker arrays or BFS.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::instances::*;
use super::{Problem, Verdict, Witness};
use crate::graph::{bfs_distances, UndirectedGraph, UNREACHABLE};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn marks(n: usize, items: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in items {
        m[i] = true;
    }
    m
}

fn pair_in_range(p: usize, q: usize, len: usize) -> Check {
    ensure(p < len && q < len, || format!("pair ({p}, {q}) out of range"))?;
    ensure(p != q, || format!("pair ({p}, {q}) repeats an index"))
}

fn check_family_pair(problem: Problem, f: &SetFamilyInstance, p: usize, q: usize) -> Check {
    pair_in_range(p, q, f.sets.len())?;
    let mp = marks(f.ground_size, &f.sets[p]);
    match problem {
        Problem::TwoDisjointSets | Problem::BigTwoDisjointSets | Problem::OrthogonalVectors => {
            ensure(f.sets[q].iter().all(|&e| !mp[e]), || {
                format!("sets {p} and {q} intersect")
            })
        }
        Problem::SpernerFamily | Problem::BigSpernerFamily => {
            let mq = marks(f.ground_size, &f.sets[q]);
            ensure(f.sets[p].iter().all(|&e| mq[e]), || {
                format!("set {p} is not contained in set {q}")
            })
        }
        _ => {
            let mut covered = mp;
            for &e in &f.sets[q] {
                covered[e] = true;
            }
            ensure(covered.iter().all(|&c| c), || {
                format!("sets {p} and {q} do not cover the ground set")
            })
        }
    }
}

fn check_dominated(g: &UndirectedGraph, v: usize, w: usize) -> Check {
    pair_in_range(v, w, g.vertex_count())?;
    let mv = marks(g.vertex_count(), g.neighbors(v));
    ensure(g.neighbors(w).iter().all(|&x| mv[x]), || {
        format!("N({v}) does not contain N({w})")
    })
}

fn closed_cover(g: &UndirectedGraph, vs: &[usize]) -> Vec<bool> {
    let mut c = vec![false; g.vertex_count()];
    for &v in vs {
        c[v] = true;
        for &w in g.neighbors(v) {
            c[w] = true;
        }
    }
    c
}

fn distinct_in_range(vs: &[usize], n: usize) -> Check {
    for (i, &a) in vs.iter().enumerate() {
        ensure(a < n, || format!("vertex {a} out of range"))?;
        ensure(!vs[..i].contains(&a), || format!("vertex {a} repeated"))?;
    }
    Ok(())
}

fn witness_required(w: Option<&Witness>) -> Result<&Witness, String> {
    w.ok_or_else(|| "positive answer without a witness".to_string())
}

/// Checks that a verdict has the right shape for `problem` and that its
/// witness, if any, proves what it claims on `inst`. Positive decision
/// answers must carry a witness.
pub fn check_verdict(problem: Problem, inst: &Instance, verdict: &Verdict) -> Check {
    use Problem::*;
    let shape = || format!("verdict {verdict} has the wrong shape for {problem}");
    match (problem, inst, verdict) {
        (MaximalElements, Instance::SetFamily(f), Verdict::Indices(ix)) => {
            ensure(ix.windows(2).all(|w| w[0] < w[1]), || "indices not sorted".into())?;
            ensure(ix.iter().all(|&i| i < f.sets.len()), || "index out of range".into())
        }
        (SubsetGraph, Instance::SetFamily(f), Verdict::Edges(es)) => {
            for &(p, q) in es {
                check_family_pair(SpernerFamily, f, p, q)?;
            }
            Ok(())
        }
        (BetweennessCentrality, Instance::Graph(g), Verdict::Rationals(v)) => {
            ensure(v.len() == g.vertex_count(), || "one value per vertex expected".into())
        }
        (BetweennessCentralityVertex, _, Verdict::Rational(_)) => Ok(()),
        (HyperbolicityFixedPair, Instance::GraphPair { graph, x, y }, Verdict::Integer { value, witness }) => {
            let Some(w) = witness else {
                return ensure(*value == 0, || "positive value without a witness".into());
            };
            let Witness::Pair(v, w) = *w else {
                return Err(shape());
            };
            distinct_in_range(&[*x, *y, v, w], graph.vertex_count())?;
            let (dx, dy, dv) = (
                bfs_distances(graph, *x),
                bfs_distances(graph, *y),
                bfs_distances(graph, v),
            );
            let mut sums = [
                dx[*y] as u64 + dv[w] as u64,
                dx[v] as u64 + dy[w] as u64,
                dx[w] as u64 + dy[v] as u64,
            ];
            sums.sort_unstable();
            ensure(sums[2] - sums[1] == *value, || {
                format!("quadruple ({x}, {y}, {v}, {w}) has hyperbolicity {}", sums[2] - sums[1])
            })
        }
        (LocalStringAlign, Instance::Strings(s), Verdict::Integer { value, witness }) => {
            let Some(w) = witness else {
                return ensure(*value == 0, || "positive length without a witness".into());
            };
            let Witness::Window {
                start1,
                start2,
                len,
            } = *w
            else {
                return Err(shape());
            };
            ensure(len as u64 == *value, || "window length differs from value".into())?;
            ensure(start1 + len <= s.s1.len() && start2 + len <= s.s2.len(), || {
                "window out of range".into()
            })?;
            ensure(
                (0..len).all(|i| {
                    let (a, b) = (s.s1[start1 + i], s.s2[start2 + i]);
                    a == b || a == b'*' || b == b'*'
                }),
                || "windows disagree".into(),
            )
        }
        (GraphDiameter2Or3 | SplitGraphDiameter2Or3, _, Verdict::Bool { answer, witness }) => {
            let g = match inst {
                Instance::Graph(g) => g,
                Instance::Split(s) => &s.graph,
                _ => return Err(shape()),
            };
            if *answer {
                return Ok(());
            }
            let Some(Witness::Pair(u, v)) = witness else {
                return Err("diameter-3 answer without a distant pair".into());
            };
            pair_in_range(*u, *v, g.vertex_count())?;
            ensure(bfs_distances(g, *u)[*v] == 3, || format!("d({u}, {v}) is not 3"))
        }
        (_, _, Verdict::Bool { answer, witness }) => {
            if !*answer {
                return Ok(());
            }
            let w = witness_required(witness.as_ref())?;
            check_positive(problem, inst, w).map_err(|e| format!("{problem}: {e}"))
        }
        _ => Err(shape()),
    }
}

fn check_positive(problem: Problem, inst: &Instance, w: &Witness) -> Check {
    use Problem::*;
    match (problem, inst, w) {
        (KSatStar, Instance::SplitCnf(i), &Witness::Pair(a, b)) => {
            ensure(a < i.x_evals.len() && b < i.y_evals.len(), || {
                "evaluation index out of range".into()
            })?;
            let (xa, yb) = (&i.x_evals[a], &i.y_evals[b]);
            for (c, clause) in i.clauses.iter().enumerate() {
                let sat = clause.iter().any(|&l| {
                    let var = l.unsigned_abs() as usize;
                    let value = if var <= i.x_vars {
                        xa[var - 1]
                    } else {
                        yb[var - 1 - i.x_vars]
                    };
                    value == (l > 0)
                });
                ensure(sat, || format!("clause {c} is falsified"))?;
            }
            Ok(())
        }
        (
            TwoDisjointSets | BigTwoDisjointSets | SpernerFamily | BigSpernerFamily | TwoCovering
            | BigTwoCovering,
            Instance::SetFamily(f),
            &Witness::Pair(p, q),
        ) => check_family_pair(problem, f, p, q),
        (OrthogonalVectors, Instance::Vectors(v), &Witness::Pair(p, q)) => {
            check_family_pair(problem, &vectors_to_family(v), p, q)
        }
        (GraphDominatedVertex, Instance::Graph(g), &Witness::Pair(v, x)) => {
            check_dominated(g, v, x)
        }
        (BipGraphDominatedVertex, Instance::Bipartite(b), &Witness::Pair(v, x)) => {
            check_dominated(&b.graph, v, x)
        }
        (MinimumClosenessCentrality, Instance::GraphThreshold { graph, threshold }, &Witness::Vertex(v)) => {
            ensure(v < graph.vertex_count(), || "vertex out of range".into())?;
            let d = bfs_distances(graph, v);
            let below = if *threshold <= BigRational::zero() {
                false
            } else if d.contains(&UNREACHABLE) {
                true
            } else {
                let f: u64 = d.iter().map(|&x| x as u64).sum();
                f > 0 && threshold * BigRational::from_integer(f.into()) > BigRational::one()
            };
            ensure(below, || format!("closeness of {v} is not below the threshold"))
        }
        (ThreeDominatingSet, Instance::Graph(g), &Witness::Triple(a, b, c))
        | (BipartiteThreeDominatingSet, Instance::Bipartite(BipartiteGraph { graph: g, .. }), &Witness::Triple(a, b, c)) => {
            distinct_in_range(&[a, b, c], g.vertex_count())?;
            ensure(closed_cover(g, &[a, b, c]).iter().all(|&x| x), || {
                "triple does not dominate".into()
            })
        }
        (
            BipartiteSubsetTwoDominatingSet,
            Instance::GraphSubset {
                graph,
                subset,
                exact,
            },
            &Witness::Pair(a, b),
        ) => {
            pair_in_range(a, b, graph.vertex_count())?;
            let cover = closed_cover(graph, &[a, b]);
            let target = marks(graph.vertex_count(), subset);
            let ok = if *exact {
                cover == target
            } else {
                subset.iter().all(|&v| cover[v])
            };
            ensure(ok, || "pair does not dominate the subset".into())
        }
        (ZerosMatrixMultiplication, Instance::Matrices(m), &Witness::Cell(i, j)) => {
            ensure(i < m.left.rows && j < m.right.cols, || "cell out of range".into())?;
            ensure(m.left.row_ones[i].iter().all(|&k| !m.right.get(k, j)), || {
                format!("product entry ({i}, {j}) is 1")
            })
        }
        _ => Err(format!("witness {w} has the wrong shape")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bogus_witnesses() {
        let f = SetFamilyInstance::new(2, vec![vec![0], vec![0, 1]]).unwrap();
        let inst = Instance::SetFamily(f);
        let bad = Verdict::yes(Witness::Pair(0, 1));
        assert!(check_verdict(Problem::TwoDisjointSets, &inst, &bad).is_err());
        assert!(check_verdict(Problem::SpernerFamily, &inst, &bad).is_ok());
        assert!(check_verdict(Problem::SpernerFamily, &inst, &Verdict::yes(Witness::Pair(1, 1))).is_err());
        let missing = Verdict::Bool {
            answer: true,
            witness: None,
        };
        assert!(check_verdict(Problem::SpernerFamily, &inst, &missing).is_err());
        assert!(check_verdict(Problem::SpernerFamily, &inst, &Verdict::no()).is_ok());
    }

    #[test]
    fn checks_zero_cells() {
        let m = BinaryMatrix::new(1, 1, vec![vec![0]]).unwrap();
        let inst = Instance::Matrices(BinaryMatrixPair::new(m.clone(), m).unwrap());
        let v = Verdict::yes(Witness::Cell(0, 0));
        assert!(check_verdict(Problem::ZerosMatrixMultiplication, &inst, &v).is_err());
    }
}
