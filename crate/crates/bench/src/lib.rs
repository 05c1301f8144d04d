//! Criterion benchmarks for lexind-core; see `benches/`.
