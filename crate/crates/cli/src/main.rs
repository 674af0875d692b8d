//! `subquad`: generate, solve, reduce and verify instances; close and
//! recognize graphs; run the closure scaling benchmark.
//!
//! Exit codes: 0 success, 1 a check or verification came out negative,
//! 2 usage error, 3 unreadable or invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subquad_core::closure::{closure_with, is_transitive, ClosureMethod, DEFAULT_OMEGA};
use subquad_core::comparability::{is_comparability, ComparabilityCertificate};
use subquad_core::harness::{bench_closure, generate, suite, BenchConfig, BenchFamily, GeneratorSpec, Plant};
use subquad_core::io::{parse_directed, parse_instance, parse_undirected, write_directed, write_instance};
use subquad_core::reductions::{reduce, verify_reduction, SizeContract};
use subquad_core::rng::default_seed;
use subquad_core::zoo::{solve, Problem, Verdict, Witness};

#[derive(Parser)]
#[command(name = "subquad", version, about = "Transitive closure, comparability recognition and a zoo of quadratic-hard problems")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Gk,
    Matrix,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlantArg {
    Yes,
    No,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteMix {
    Yes,
    No,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sparse,
    Dense,
    Constant,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        problem: String,
        #[arg(long, value_enum, default_value_t = PlantArg::Random)]
        plant: PlantArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Vertices, matrix rows or string length.
        #[arg(long)]
        n: Option<usize>,
        /// Ground set size, inner matrix dimension, clique size or x-variables.
        #[arg(long)]
        ground: Option<usize>,
        /// Set count, matrix columns, independent side or y-variables.
        #[arg(long)]
        sets: Option<usize>,
        #[arg(long)]
        density: Option<f64>,
        /// Write here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an instance with the reference solver.
    Solve { problem: String, file: PathBuf },
    /// Reduce an instance and write the target instance.
    Reduce {
        source: String,
        target: String,
        infile: PathBuf,
        outfile: PathBuf,
    },
    /// Check a reduction on a seeded suite.
    Verify {
        source: String,
        target: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = SuiteMix::Mixed)]
        planted: SuiteMix,
    },
    /// Transitive closure of a digraph.
    Closure {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Gk)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_OMEGA)]
        omega: f64,
    },
    /// Exit 0 if the digraph is transitive, 1 with a witness triple if not.
    CheckTransitive { file: PathBuf },
    /// Exit 0 with a transitive orientation, 1 with a witness if none exists.
    CheckComparability { file: PathBuf },
    /// Scaling benchmark of the closure sweep.
    Bench {
        #[arg(long, value_enum, default_value_t = FamilyArg::Sparse)]
        family: FamilyArg,
        /// Smallest size is 2^min_exp.
        #[arg(long, default_value_t = 10)]
        min_exp: u32,
        #[arg(long, default_value_t = 15)]
        max_exp: u32,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn problem(name: &str) -> Result<Problem, Failure> {
    Problem::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown problem `{name}`")))
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Gen {
            problem: name,
            plant,
            seed,
            n,
            ground,
            sets,
            density,
            output,
        } => {
            let p = problem(&name)?;
            let plant = match plant {
                PlantArg::Yes => Plant::Yes,
                PlantArg::No => Plant::No,
                PlantArg::Random => Plant::Random,
            };
            let mut spec = GeneratorSpec::new(p, plant, seed.unwrap_or_else(default_seed));
            spec.n = n.unwrap_or(spec.n);
            spec.ground = ground.unwrap_or(spec.ground);
            spec.sets = sets.unwrap_or(spec.sets);
            spec.density = density.unwrap_or(spec.density);
            let inst = generate(&spec).context("generating")?;
            emit(output.as_deref(), &write_instance(&inst))?;
            Ok(true)
        }
        Command::Solve { problem: name, file } => {
            let p = problem(&name)?;
            let inst = parse_instance(&read(&file)?, p.instance_kind()).context("parsing instance")?;
            let v = solve(p, &inst).context("solving")?;
            match format {
                Format::Text => println!("{v}"),
                Format::Json => print_json(&json!({ "problem": p.name(), "verdict": verdict_json(&v) })),
            }
            Ok(true)
        }
        Command::Reduce {
            source,
            target,
            infile,
            outfile,
        } => {
            let (s, t) = (problem(&source)?, problem(&target)?);
            let inst = parse_instance(&read(&infile)?, s.instance_kind()).context("parsing instance")?;
            let rec = reduce(s, t, &inst).map_err(|e| match e {
                subquad_core::reductions::ReductionError::UnknownReductionPair(..) => Failure::Usage(e.to_string()),
                other => Failure::Data(other.into()),
            })?;
            emit(Some(&outfile), &write_instance(&rec.instance))?;
            match format {
                Format::Text => println!(
                    "{s} -> {t} size_in={} size_out={} decided={}",
                    rec.size_in, rec.size_out, rec.decided
                ),
                Format::Json => print_json(&json!({
                    "source": s.name(), "target": t.name(),
                    "size_in": rec.size_in, "size_out": rec.size_out, "decided": rec.decided,
                })),
            }
            Ok(true)
        }
        Command::Verify {
            source,
            target,
            count,
            seed,
            planted,
        } => {
            let (s, t) = (problem(&source)?, problem(&target)?);
            let seed = seed.unwrap_or_else(default_seed);
            let plantable = generate(&GeneratorSpec::new(s, Plant::Yes, seed)).is_ok();
            let (random, yes, no) = match planted {
                SuiteMix::Yes => (0, count, 0),
                SuiteMix::No => (0, 0, count),
                SuiteMix::Mixed if plantable => (count - 2 * (count / 6), count / 6, count / 6),
                SuiteMix::Mixed => (count, 0, 0),
            };
            let instances = suite(s, seed, random, yes, no).context("generating suite")?;
            let report = verify_reduction(s, t, &instances, SizeContract::default())
                .map_err(|e| Failure::Usage(e.to_string()))?;
            match format {
                Format::Text => println!("{report}"),
                Format::Json => print_json(&serde_json::to_value(&report).expect("report serializes")),
            }
            Ok(report.ok())
        }
        Command::Closure { file, method, omega } => {
            let g = parse_directed(&read(&file)?).context("parsing graph")?;
            let method = match method {
                Method::Gk => ClosureMethod::Gk,
                Method::Matrix => ClosureMethod::BitMatrix,
                Method::Hybrid => ClosureMethod::Hybrid,
            };
            let r = closure_with(&g, method, omega).map_err(|e| Failure::Usage(e.to_string()))?;
            match format {
                Format::Text => {
                    print!("{}", write_directed(&r.closure));
                    println!(
                        "# edges_in={} edges_out={} method={} work={}",
                        r.input_edges,
                        r.closure_edges,
                        r.method_used.name(),
                        r.work_counter
                    );
                }
                Format::Json => print_json(&json!({
                    "edges_in": r.input_edges,
                    "edges_out": r.closure_edges,
                    "method": r.method_used.name(),
                    "work": r.work_counter,
                    "n": r.closure.vertex_count(),
                    "edges": r.closure.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                })),
            }
            Ok(true)
        }
        Command::CheckTransitive { file } => {
            let g = parse_directed(&read(&file)?).context("parsing graph")?;
            let c = is_transitive(&g);
            match format {
                Format::Text => match c.witness {
                    None => println!("transitive"),
                    Some((a, b, x)) => println!("not transitive witness {a} {b} {x}"),
                },
                Format::Json => print_json(&serde_json::to_value(&c).expect("serializes")),
            }
            Ok(c.transitive)
        }
        Command::CheckComparability { file } => {
            let g = parse_undirected(&read(&file)?).context("parsing graph")?;
            let v = is_comparability(&g);
            let (text, value) = match &v.certificate {
                ComparabilityCertificate::Transitive(d) => (
                    format!("comparability\n{}", write_directed(d)),
                    json!({ "comparability": true, "orientation": d.edges().map(|(u, w)| [u, w]).collect::<Vec<_>>() }),
                ),
                ComparabilityCertificate::NotTransitive { witness: (a, b, c), .. } => (
                    format!("not comparability witness {a} {b} {c}\n"),
                    json!({ "comparability": false, "witness": [a, b, c] }),
                ),
                ComparabilityCertificate::Contradiction(fc) => (
                    format!("not comparability forced {} {}\n", fc.edge.0, fc.edge.1),
                    json!({ "comparability": false, "forced": [fc.edge.0, fc.edge.1] }),
                ),
            };
            match format {
                Format::Text => print!("{text}"),
                Format::Json => print_json(&value),
            }
            Ok(v.is_comparability)
        }
        Command::Bench {
            family,
            min_exp,
            max_exp,
            repeats,
            seed,
        } => {
            if min_exp > max_exp || max_exp > 30 {
                return Err(Failure::Usage("need min-exp <= max-exp <= 30".into()));
            }
            let family = match family {
                FamilyArg::Sparse => BenchFamily::Sparse,
                FamilyArg::Dense => BenchFamily::Dense,
                FamilyArg::Constant => BenchFamily::Constant,
            };
            let cfg = BenchConfig::powers(family, min_exp, max_exp, repeats, seed.unwrap_or_else(default_seed));
            let report = bench_closure(&cfg);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(true)
        }
    }
}

fn witness_json(w: Option<&Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(Witness::Pair(a, b)) | Some(Witness::Cell(a, b)) => json!([a, b]),
        Some(Witness::Triple(a, b, c)) => json!([a, b, c]),
        Some(Witness::Vertex(v)) => json!([v]),
        Some(Witness::Window { start1, start2, len }) => json!([start1, start2, len]),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Bool { answer, witness } => json!({ "answer": answer, "witness": witness_json(witness.as_ref()) }),
        Verdict::Integer { value, witness } => json!({ "value": value, "witness": witness_json(witness.as_ref()) }),
        Verdict::Rational(r) => json!({ "value": r.to_string() }),
        Verdict::Rationals(rs) => json!({ "values": rs.iter().map(|r| r.to_string()).collect::<Vec<_>>() }),
        Verdict::Indices(ix) => json!({ "indices": ix }),
        Verdict::Edges(es) => json!({ "edges": es.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>() }),
    }
}
