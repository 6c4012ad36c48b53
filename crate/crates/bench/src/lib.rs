//! Benchmarks for the counting, exact-law and search kernels; see `benches/kernels.rs`.
