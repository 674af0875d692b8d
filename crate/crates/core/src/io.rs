//! Plain-text instance formats.
//!
//! Every format is line based. `#` starts a comment and blank lines are
//! ignored, so lists that may be empty are written with a leading count.
//!
//! ```text
//! dg n m | ug n m        graph header, then m lines `u v`
//! left 0110...           bipartite side per vertex (1 = left); inferred if absent
//! clique 1100...         split-graph clique membership per vertex
//! vertex v | pair x y | threshold p/q | subset v1 v2 ... | exact
//! sf |X| |C|             set family, then |C| lines `size e1 ... e_size`, optional `big`
//! bv d t                 vectors, then t bit strings of length d
//! kcnf* nx ny k          split CNF, clause lines of signed literals ending in 0,
//!                        then `xevals t` and t bit strings, `yevals t` and t bit strings
//! bm r c                 matrix, then r lines `count c1 ... c_count`; a pair is two blocks
//! ```
//!
//! Wildcard string pairs are two lines over `0`, `1`, `*`, with `-` for
//! an empty string. Writers emit edges in lexicographic order and bit strings
//! of zero width as `-`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{DirectedGraph, GraphError, UndirectedGraph};
use crate::zoo::{
    BinaryMatrix, BinaryMatrixPair, BipartiteGraph, Instance, InstanceError, InstanceKind, SetFamilyInstance,
    SplitCnfInstance, SplitGraph, VectorCollection, WildcardStringPair,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

type Parsed<T> = Result<T, FormatError>;

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = l.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Parsed<(usize, Vec<&'a str>)> {
        let l = self.lines.get(self.pos).cloned().ok_or_else(|| FormatError::Syntax {
            line: self.lines.last().map_or(0, |l| l.0),
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(l)
    }

    fn done(&self) -> Parsed<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, toks)) => Err(syntax(*line, format!("unexpected `{}`", toks.join(" ")))),
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Parsed<T> {
    tok.parse().map_err(|_| syntax(line, format!("bad number `{tok}`")))
}

fn expect_len(line: usize, toks: &[&str], n: usize) -> Parsed<()> {
    if toks.len() != n {
        return Err(syntax(line, format!("expected {n} fields, got {}", toks.len())));
    }
    Ok(())
}

fn bits(line: usize, tok: &str, width: usize) -> Parsed<Vec<bool>> {
    if tok == "-" && width == 0 {
        return Ok(Vec::new());
    }
    if tok.len() != width {
        return Err(syntax(line, format!("bit string `{tok}` should have length {width}")));
    }
    tok.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(syntax(line, format!("bad bit `{c}`"))),
        })
        .collect()
}

fn bit_string(b: &[bool]) -> String {
    if b.is_empty() {
        return "-".into();
    }
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

/// `count v1 ... v_count`.
fn counted(line: usize, toks: &[&str]) -> Parsed<Vec<usize>> {
    let n: usize = num(line, toks[0])?;
    expect_len(line, toks, n + 1)?;
    toks[1..].iter().map(|t| num(line, t)).collect()
}

fn counted_line(out: &mut String, items: &[usize]) {
    write!(out, "{}", items.len()).unwrap();
    for i in items {
        write!(out, " {i}").unwrap();
    }
    out.push('\n');
}

fn graph_edges(lines: &mut Lines, tag: &str) -> Parsed<(usize, Vec<(usize, usize)>)> {
    let (line, h) = lines.next("graph header")?;
    if h[0] != tag {
        return Err(syntax(line, format!("expected `{tag} n m`, got `{}`", h.join(" "))));
    }
    expect_len(line, &h, 3)?;
    let (n, m): (usize, usize) = (num(line, h[1])?, num(line, h[2])?);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, t) = lines.next("an edge")?;
        expect_len(line, &t, 2)?;
        edges.push((num(line, t[0])?, num(line, t[1])?));
    }
    Ok((n, edges))
}

pub fn parse_directed(text: &str) -> Parsed<DirectedGraph> {
    let mut lines = Lines::new(text);
    let (n, edges) = graph_edges(&mut lines, "dg")?;
    lines.done()?;
    if edges.iter().any(|&(u, v)| u == v) {
        Ok(DirectedGraph::from_edges_with_loops(n, edges)?)
    } else {
        Ok(DirectedGraph::from_edges(n, edges)?)
    }
}

pub fn write_directed(g: &DirectedGraph) -> String {
    let mut out = format!("dg {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_undirected(text: &str) -> Parsed<UndirectedGraph> {
    let mut lines = Lines::new(text);
    let g = undirected(&mut lines)?;
    lines.done()?;
    Ok(g)
}

fn undirected(lines: &mut Lines) -> Parsed<UndirectedGraph> {
    let (n, edges) = graph_edges(lines, "ug")?;
    Ok(UndirectedGraph::from_edges(n, edges)?)
}

pub fn write_undirected(g: &UndirectedGraph) -> String {
    let mut out = format!("ug {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Two-colors each component starting from its smallest vertex.
fn infer_sides(g: &UndirectedGraph) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(true);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v]?;
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        stack.push(w);
                    }
                    Some(sw) if sw == sv => return None,
                    _ => {}
                }
            }
        }
    }
    side.into_iter().collect()
}

#[derive(Default)]
struct GraphParams {
    left: Option<Vec<bool>>,
    clique: Option<Vec<bool>>,
    vertex: Option<usize>,
    pair: Option<(usize, usize)>,
    threshold: Option<BigRational>,
    subset: Option<Vec<usize>>,
    exact: bool,
}

fn graph_params(lines: &mut Lines, n: usize) -> Parsed<GraphParams> {
    let mut p = GraphParams::default();
    while let Some((line, t)) = lines.peek().cloned() {
        lines.pos += 1;
        match t[0] {
            "left" | "clique" => {
                expect_len(line, &t, 2)?;
                let b = bits(line, t[1], n)?;
                if t[0] == "left" {
                    p.left = Some(b);
                } else {
                    p.clique = Some(b);
                }
            }
            "vertex" => {
                expect_len(line, &t, 2)?;
                p.vertex = Some(num(line, t[1])?);
            }
            "pair" => {
                expect_len(line, &t, 3)?;
                p.pair = Some((num(line, t[1])?, num(line, t[2])?));
            }
            "threshold" => {
                expect_len(line, &t, 2)?;
                let (a, b) = t[1].split_once('/').unwrap_or((t[1], "1"));
                let (a, b): (BigInt, BigInt) = (num(line, a)?, num(line, b)?);
                if b == BigInt::from(0) {
                    return Err(syntax(line, "zero denominator"));
                }
                p.threshold = Some(BigRational::new(a, b));
            }
            "subset" => p.subset = Some(t[1..].iter().map(|x| num(line, x)).collect::<Parsed<_>>()?),
            "exact" => p.exact = true,
            other => return Err(syntax(line, format!("unknown parameter `{other}`"))),
        }
    }
    Ok(p)
}

fn missing(what: &str) -> FormatError {
    syntax(0, format!("missing `{what}` line"))
}

fn check_vertex(v: usize, n: usize) -> Parsed<usize> {
    if v >= n {
        return Err(InstanceError::VertexOutOfRange { vertex: v, n }.into());
    }
    Ok(v)
}

/// Parses an instance of the given shape.
pub fn parse_instance(text: &str, kind: InstanceKind) -> Parsed<Instance> {
    let mut lines = Lines::new(text);
    let inst = match kind {
        InstanceKind::SetFamily => Instance::SetFamily(set_family(&mut lines)?),
        InstanceKind::Vectors => Instance::Vectors(vectors(&mut lines)?),
        InstanceKind::SplitCnf => Instance::SplitCnf(split_cnf(&mut lines)?),
        InstanceKind::Matrices => {
            let a = matrix(&mut lines)?;
            let b = matrix(&mut lines)?;
            Instance::Matrices(BinaryMatrixPair::new(a, b)?)
        }
        InstanceKind::Strings => {
            let mut s = [String::new(), String::new()];
            for slot in &mut s {
                let (line, t) = lines.next("a string")?;
                expect_len(line, &t, 1)?;
                *slot = if t[0] == "-" { String::new() } else { t[0].to_string() };
            }
            Instance::Strings(WildcardStringPair::new(&s[0], &s[1])?)
        }
        _ => {
            let graph = undirected(&mut lines)?;
            let n = graph.vertex_count();
            let p = graph_params(&mut lines, n)?;
            match kind {
                InstanceKind::Graph => Instance::Graph(graph),
                InstanceKind::Bipartite => {
                    let left = match p.left {
                        Some(l) => l,
                        None => infer_sides(&graph).ok_or_else(|| syntax(0, "graph is not bipartite"))?,
                    };
                    Instance::Bipartite(BipartiteGraph::new(graph, left)?)
                }
                InstanceKind::Split => {
                    let clique = p.clique.ok_or_else(|| missing("clique"))?;
                    Instance::Split(SplitGraph::new(graph, clique)?)
                }
                InstanceKind::GraphVertex => {
                    let vertex = check_vertex(p.vertex.ok_or_else(|| missing("vertex"))?, n)?;
                    Instance::GraphVertex { graph, vertex }
                }
                InstanceKind::GraphThreshold => Instance::GraphThreshold {
                    graph,
                    threshold: p.threshold.ok_or_else(|| missing("threshold"))?,
                },
                InstanceKind::GraphPair => {
                    let (x, y) = p.pair.ok_or_else(|| missing("pair"))?;
                    let (x, y) = (check_vertex(x, n)?, check_vertex(y, n)?);
                    Instance::GraphPair { graph, x, y }
                }
                InstanceKind::GraphSubset => {
                    let subset = p.subset.ok_or_else(|| missing("subset"))?;
                    for &v in &subset {
                        check_vertex(v, n)?;
                    }
                    Instance::GraphSubset {
                        graph,
                        subset,
                        exact: p.exact,
                    }
                }
                _ => unreachable!("non-graph kinds handled above"),
            }
        }
    };
    lines.done()?;
    Ok(inst)
}

fn set_family(lines: &mut Lines) -> Parsed<SetFamilyInstance> {
    let (line, h) = lines.next("`sf` header")?;
    if h[0] != "sf" {
        return Err(syntax(line, "expected `sf |X| |C|`"));
    }
    expect_len(line, &h, 3)?;
    let (ground, count): (usize, usize) = (num(line, h[1])?, num(line, h[2])?);
    let mut sets = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, t) = lines.next("a set")?;
        sets.push(counted(line, &t)?);
    }
    let mut f = SetFamilyInstance::new(ground, sets)?;
    if let Some((_, t)) = lines.peek() {
        if t == &["big"] {
            lines.pos += 1;
            f.big = true;
        }
    }
    Ok(f)
}

fn vectors(lines: &mut Lines) -> Parsed<VectorCollection> {
    let (line, h) = lines.next("`bv` header")?;
    if h[0] != "bv" {
        return Err(syntax(line, "expected `bv d t`"));
    }
    expect_len(line, &h, 3)?;
    let (dim, count): (usize, usize) = (num(line, h[1])?, num(line, h[2])?);
    let mut vs = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, t) = lines.next("a vector")?;
        expect_len(line, &t, 1)?;
        let b = bits(line, t[0], dim)?;
        vs.push((0..dim).filter(|&i| b[i]).collect());
    }
    Ok(VectorCollection::new(dim, vs)?)
}

fn evals(lines: &mut Lines, tag: &str, width: usize) -> Parsed<Vec<Vec<bool>>> {
    let (line, h) = lines.next(tag)?;
    if h[0] != tag {
        return Err(syntax(line, format!("expected `{tag} t`")));
    }
    expect_len(line, &h, 2)?;
    let t: usize = num(line, h[1])?;
    (0..t)
        .map(|_| {
            let (line, b) = lines.next("an evaluation")?;
            expect_len(line, &b, 1)?;
            bits(line, b[0], width)
        })
        .collect()
}

fn split_cnf(lines: &mut Lines) -> Parsed<SplitCnfInstance> {
    let (line, h) = lines.next("`kcnf*` header")?;
    if h[0] != "kcnf*" {
        return Err(syntax(line, "expected `kcnf* nx ny k`"));
    }
    expect_len(line, &h, 4)?;
    let (nx, ny, k): (usize, usize, usize) = (num(line, h[1])?, num(line, h[2])?, num(line, h[3])?);
    let mut clauses = Vec::new();
    while let Some((line, t)) = lines.peek().cloned() {
        if t[0] == "xevals" {
            break;
        }
        lines.pos += 1;
        if t.last() != Some(&"0") {
            return Err(syntax(line, "clause must end in 0"));
        }
        clauses.push(t[..t.len() - 1].iter().map(|x| num(line, x)).collect::<Parsed<Vec<i64>>>()?);
    }
    let xe = evals(lines, "xevals", nx)?;
    let ye = evals(lines, "yevals", ny)?;
    Ok(SplitCnfInstance::new(nx, ny, k, clauses, xe, ye)?)
}

fn matrix(lines: &mut Lines) -> Parsed<BinaryMatrix> {
    let (line, h) = lines.next("`bm` header")?;
    if h[0] != "bm" {
        return Err(syntax(line, "expected `bm r c`"));
    }
    expect_len(line, &h, 3)?;
    let (r, c): (usize, usize) = (num(line, h[1])?, num(line, h[2])?);
    let rows = (0..r)
        .map(|_| {
            let (line, t) = lines.next("a matrix row")?;
            counted(line, &t)
        })
        .collect::<Parsed<_>>()?;
    Ok(BinaryMatrix::new(r, c, rows)?)
}

fn write_matrix(out: &mut String, m: &BinaryMatrix) {
    writeln!(out, "bm {} {}", m.rows, m.cols).unwrap();
    for row in &m.row_ones {
        counted_line(out, row);
    }
}

fn flags(out: &mut String, tag: &str, b: &[bool]) {
    writeln!(out, "{tag} {}", bit_string(b)).unwrap();
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    match inst {
        Instance::SetFamily(f) => {
            writeln!(out, "sf {} {}", f.ground_size, f.sets.len()).unwrap();
            for s in &f.sets {
                counted_line(&mut out, s);
            }
            if f.big {
                out.push_str("big\n");
            }
        }
        Instance::Vectors(v) => {
            writeln!(out, "bv {} {}", v.dim, v.vectors.len()).unwrap();
            for vec in &v.vectors {
                let mut b = vec![false; v.dim];
                for &i in vec {
                    b[i] = true;
                }
                writeln!(out, "{}", bit_string(&b)).unwrap();
            }
        }
        Instance::SplitCnf(i) => {
            writeln!(out, "kcnf* {} {} {}", i.x_vars, i.y_vars, i.width).unwrap();
            for c in &i.clauses {
                for l in c {
                    write!(out, "{l} ").unwrap();
                }
                out.push_str("0\n");
            }
            for (tag, ev) in [("xevals", &i.x_evals), ("yevals", &i.y_evals)] {
                writeln!(out, "{tag} {}", ev.len()).unwrap();
                for e in ev {
                    writeln!(out, "{}", bit_string(e)).unwrap();
                }
            }
        }
        Instance::Matrices(m) => {
            write_matrix(&mut out, &m.left);
            write_matrix(&mut out, &m.right);
        }
        Instance::Strings(s) => {
            for x in [&s.s1, &s.s2] {
                let t = if x.is_empty() { "-" } else { std::str::from_utf8(x).expect("ascii") };
                writeln!(out, "{t}").unwrap();
            }
        }
        Instance::Graph(g) => out = write_undirected(g),
        Instance::Bipartite(b) => {
            out = write_undirected(&b.graph);
            flags(&mut out, "left", &b.left);
        }
        Instance::Split(s) => {
            out = write_undirected(&s.graph);
            flags(&mut out, "clique", &s.clique);
        }
        Instance::GraphVertex { graph, vertex } => {
            out = write_undirected(graph);
            writeln!(out, "vertex {vertex}").unwrap();
        }
        Instance::GraphThreshold { graph, threshold } => {
            out = write_undirected(graph);
            writeln!(out, "threshold {}/{}", threshold.numer(), threshold.denom()).unwrap();
        }
        Instance::GraphPair { graph, x, y } => {
            out = write_undirected(graph);
            writeln!(out, "pair {x} {y}").unwrap();
        }
        Instance::GraphSubset { graph, subset, exact } => {
            out = write_undirected(graph);
            out.push_str("subset");
            for v in subset {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
            if *exact {
                out.push_str("exact\n");
            }
        }
    }
    out
}
