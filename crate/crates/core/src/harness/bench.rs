//! Empirical scaling of the closure sweep.
//!
//! Each run builds one DAG per size from a seeded family, closes it with
//! [`gk_closure`] sequentially, and records the work counter and the best
//! wall time over the repeats. Exponents come from a least-squares line
//! through the log–log points.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::closure::gk_closure;
use crate::graph::DirectedGraph;
use crate::rng::Rng;

use super::gen::random_dag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchFamily {
    /// Chains of 8 grouped four at a time, with random cross edges inside a
    /// group. Both `m` and the closure stay linear in `n`.
    Sparse,
    /// Random DAG with about `4n` edges; the closure is quadratic.
    Dense,
    /// Disjoint paths of three vertices. Work is exactly `n / 3`.
    Constant,
}

impl BenchFamily {
    pub fn name(self) -> &'static str {
        match self {
            BenchFamily::Sparse => "sparse",
            BenchFamily::Dense => "dense",
            BenchFamily::Constant => "constant",
        }
    }

    pub fn from_name(s: &str) -> Option<BenchFamily> {
        match s {
            "sparse" => Some(BenchFamily::Sparse),
            "dense" => Some(BenchFamily::Dense),
            "constant" => Some(BenchFamily::Constant),
            _ => None,
        }
    }

    pub fn build(self, n: usize, r: &mut Rng) -> DirectedGraph {
        match self {
            BenchFamily::Sparse => sparse_dag(n, r),
            BenchFamily::Dense => random_dag(n, (8.0 / n.max(2) as f64).min(1.0), r),
            BenchFamily::Constant => {
                let edges = (0..n / 3).flat_map(|c| [(3 * c, 3 * c + 1), (3 * c + 1, 3 * c + 2)]);
                DirectedGraph::from_edges(n, edges).expect("disjoint paths")
            }
        }
    }
}

const CHAIN: usize = 8;
const GROUP: usize = 4 * CHAIN;

fn sparse_dag(n: usize, r: &mut Rng) -> DirectedGraph {
    let mut edges = Vec::new();
    for start in (0..n).step_by(CHAIN) {
        for v in start + 1..(start + CHAIN).min(n) {
            edges.push((v - 1, v));
        }
    }
    // One cross edge per chain, forward inside its group of four chains.
    for start in (0..n).step_by(GROUP) {
        let end = (start + GROUP).min(n);
        for _ in 0..(end - start) / CHAIN {
            let a = r.range(start, end - 1);
            let b = r.range(start, end - 1);
            let (a, b) = (a.min(b), a.max(b));
            if a / CHAIN != b / CHAIN && !edges.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
    }
    DirectedGraph::from_edges(n, edges).expect("forward edges")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub family: BenchFamily,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub seed: u64,
}

impl BenchConfig {
    /// Sizes `2^lo ..= 2^hi`.
    pub fn powers(family: BenchFamily, lo: u32, hi: u32, repeats: usize, seed: u64) -> Self {
        BenchConfig {
            family,
            sizes: (lo..=hi).map(|k| 1usize << k).collect(),
            repeats,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchPoint {
    pub n: usize,
    pub input_edges: usize,
    pub m_closure: usize,
    /// Best of the repeats, in seconds.
    pub wall_time: f64,
    pub work_counter: u64,
}

/// `ln y = exponent * ln x + intercept`, with the root-mean-square residual
/// of the log values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fit {
    pub exponent: f64,
    pub intercept: f64,
    pub residual: f64,
}

/// Least-squares fit on log–log points. Points with a non-positive
/// coordinate are skipped; fewer than two usable points give `None`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Option<Fit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let k = logs.len() as f64;
    if logs.len() < 2 {
        return None;
    }
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let sse: f64 = logs.iter().map(|p| (p.1 - exponent * p.0 - intercept).powi(2)).sum();
    Some(Fit {
        exponent,
        intercept,
        residual: (sse / k).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub series: Vec<BenchPoint>,
    pub work_fit: Option<Fit>,
    pub time_fit: Option<Fit>,
}

pub fn bench_closure(config: &BenchConfig) -> BenchReport {
    let mut series = Vec::with_capacity(config.sizes.len());
    for (i, &n) in config.sizes.iter().enumerate() {
        let mut r = Rng::new(config.seed.wrapping_add(i as u64));
        let g = config.family.build(n, &mut r);
        let mut best = f64::INFINITY;
        let mut result = None;
        for _ in 0..config.repeats.max(1) {
            let t = Instant::now();
            let c = gk_closure(&g).expect("families are acyclic");
            best = best.min(t.elapsed().as_secs_f64());
            result = Some(c);
        }
        let c = result.expect("at least one repeat");
        series.push(BenchPoint {
            n,
            input_edges: c.input_edges,
            m_closure: c.closure_edges,
            wall_time: best,
            work_counter: c.work_counter,
        });
    }
    let pts = |f: fn(&BenchPoint) -> f64| -> Vec<(f64, f64)> { series.iter().map(|p| (p.n as f64, f(p))).collect() };
    BenchReport {
        work_fit: fit_power_law(&pts(|p| p.work_counter as f64)),
        time_fit: fit_power_law(&pts(|p| p.wall_time)),
        config: config.clone(),
        series,
    }
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV series plus commented fit lines. Floats are printed in the same
    /// shortest round-trip form as the JSON rendering.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "# bench family={} repeats={} seed={}\nn,input_edges,m_closure,wall_time,work_counter\n",
            c.family.name(),
            c.repeats,
            c.seed
        );
        for p in &self.series {
            writeln!(out, "{},{},{},{},{}", p.n, p.input_edges, p.m_closure, json_float(p.wall_time), p.work_counter)
                .unwrap();
        }
        for (name, fit) in [("work", &self.work_fit), ("time", &self.time_fit)] {
            match fit {
                Some(f) => writeln!(
                    out,
                    "# {name}_fit exponent={} intercept={} residual={}",
                    json_float(f.exponent),
                    json_float(f.intercept),
                    json_float(f.residual)
                ),
                None => writeln!(out, "# {name}_fit none"),
            }
            .unwrap();
        }
        out
    }
}

fn json_float(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_exact_power() {
        let pts: Vec<(f64, f64)> = (1..6).map(|k| (k as f64, 3.0 * (k as f64).powf(1.5))).collect();
        let f = fit_power_law(&pts).unwrap();
        assert!((f.exponent - 1.5).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(f.residual < 1e-12);
        assert!(fit_power_law(&[(2.0, 1.0)]).is_none());
    }

    #[test]
    fn constant_family_is_linear() {
        let r = bench_closure(&BenchConfig::powers(BenchFamily::Constant, 6, 12, 1, 1));
        let f = r.work_fit.unwrap();
        assert!((f.exponent - 1.0).abs() < 0.01, "{f:?}");
    }

    #[test]
    fn sparse_family_stays_linear() {
        let mut r = Rng::new(3);
        for n in [100, 1000, 4096] {
            let g = BenchFamily::Sparse.build(n, &mut r);
            assert!(g.edge_count() <= n + n / CHAIN);
            let c = gk_closure(&g).unwrap();
            assert!(c.closure_edges <= n * GROUP / 2);
        }
    }

    #[test]
    fn text_and_json_carry_the_same_numbers() {
        let r = bench_closure(&BenchConfig::powers(BenchFamily::Sparse, 5, 8, 1, 9));
        let text = r.to_text();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
        for (row, p) in rows.iter().zip(json["series"].as_array().unwrap()) {
            let f: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(f[0], p["n"].as_f64().unwrap());
            assert_eq!(f[2], p["m_closure"].as_f64().unwrap());
            assert_eq!(f[3], p["wall_time"].as_f64().unwrap());
            assert_eq!(f[4], p["work_counter"].as_f64().unwrap());
        }
        let e = json["work_fit"]["exponent"].as_f64().unwrap();
        assert!(text.contains(&format!("exponent={}", json_float(e))));
    }
}
