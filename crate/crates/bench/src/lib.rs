//! Criterion benchmarks for `uprime-core`; see `benches/`.
