//! Criterion benchmarks for wickforge; see `benches/`.
