//! Criterion benchmarks for `tunnel-core`; see `benches/`.
