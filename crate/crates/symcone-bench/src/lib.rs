//! Benchmark-only package; see benches/geometry.rs.
