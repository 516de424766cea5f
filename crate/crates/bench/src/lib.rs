//! Criterion benchmarks for `hibi-core`; see `benches/hibi.rs`.
