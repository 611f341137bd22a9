//! Criterion benchmarks for the dcat kernel; see `benches/kernel.rs`.
