//! Instance builders shared by the benchmarks.

use hbip_core::{generate, make_nice, Graph, NiceTreeDecomposition};

/// A random partial `k`-tree on `n` vertices with a nice decomposition of width `k`.
pub fn partial_ktree_instance(n: usize, k: usize, keep: f64, seed: u64) -> (Graph, NiceTreeDecomposition) {
    let (g, td) = generate::partial_ktree(n, k, keep, seed);
    let nice = make_nice(&g, &td).expect("generated decompositions are valid");
    (g, nice)
}
