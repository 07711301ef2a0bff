//! Criterion benchmarks for `keller-core`; see `benches/kernels.rs`.
//!
//! Run with `cargo bench -p keller-bench`.
