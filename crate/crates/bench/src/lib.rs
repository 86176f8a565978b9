//! Benchmarks for the fibercone engines live in `benches/`.
