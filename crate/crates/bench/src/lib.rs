//! Criterion benchmarks for `tortkara-core`; see `benches/algebra.rs`.
