//! Benchmark-only crate; the criterion targets live under `benches/`.
//!
//! Run with `cargo bench -p stabdisc-bench`; a plain `cargo test` executes
//! each benchmark body once as a smoke test.
