//! Benchmark-only crate; see `benches/rings.rs`.
