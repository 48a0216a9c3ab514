//! Criterion benchmarks for `lsder-core`; run with `cargo bench -p lsder-bench`.
