//! Criterion benchmarks for the closure sweep and recognition routines; see `benches/`.
