//! Criterion benchmarks of the exact engine; see `benches/engine.rs`.
