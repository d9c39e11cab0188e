//! Criterion benchmarks for the quadrature engine; see `benches/`.
