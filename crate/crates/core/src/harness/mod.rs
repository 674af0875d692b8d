//! Generators, benchmarks and report plumbing shared by the CLI, the
//! benches and the test suites.

pub mod bench;
pub mod gen;

pub use bench::{bench_closure, fit_power_law, BenchConfig, BenchFamily, BenchPoint, BenchReport, Fit};
pub use gen::{generate, random_dag, random_digraph, suite, GenError, GeneratorSpec, Plant};
