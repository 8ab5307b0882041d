//! Criterion benchmarks for the exact-algebra kernel live under `benches/`.
