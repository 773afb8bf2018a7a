//! Criterion benchmarks for the `spinplan` kernels live in `benches/`.
