//! Benchmark-only crate; see `benches/sumsets.rs`.
