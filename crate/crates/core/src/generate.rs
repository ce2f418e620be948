//! Deterministic graph families and seeded random instances used by tests,
//! benchmarks and the differential suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, Vertex};

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits simple edges")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|a| (a, (a + 1) % n)).collect();
    build(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|a| (a - 1, a)).collect();
    build(n, &edges)
}

/// `K_{1,n-1}` with centre 0.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|a| (0, a)).collect();
    build(n, &edges)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
    build(a + b, &edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Graph on `n` vertices whose edge set is the bitmask `mask` over the
/// lexicographically ordered pairs.
pub fn from_pair_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    build(n, &edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    build(n, &edges)
}

/// Uniform random recursive tree.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    build(n, &edges)
}

/// A random partial `k`-tree on `n` vertices together with a width-`k`
/// decomposition of it.
///
/// A random `k`-tree is grown by attaching each new vertex to a uniformly
/// chosen existing `k`-clique; each edge is then kept with probability `keep`.
pub fn partial_ktree(n: usize, k: usize, keep: f64, seed: u64) -> (Graph, TreeDecomposition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = n.min(k + 1);
    let mut edges: Vec<(Vertex, Vertex)> = (0..base)
        .flat_map(|a| (a + 1..base).map(move |b| (a, b)))
        .collect();
    let mut bags: Vec<Vec<Vertex>> = vec![(0..base).collect()];
    let mut tree = Vec::new();
    // (k-clique, bag that contains it)
    let mut cliques: Vec<(Vec<Vertex>, usize)> = Vec::new();
    if base == k + 1 && k > 0 {
        for skip in 0..base {
            let c: Vec<Vertex> = (0..base).filter(|&x| x != skip).collect();
            cliques.push((c, 0));
        }
    }
    for v in base..n {
        let bag_index = bags.len();
        if k == 0 {
            bags.push(vec![v]);
            tree.push((bag_index, bag_index - 1));
            continue;
        }
        let (clique, host) = cliques[rng.gen_range(0..cliques.len())].clone();
        edges.extend(clique.iter().map(|&x| (x, v)));
        let mut bag = clique.clone();
        bag.push(v);
        bags.push(bag);
        tree.push((bag_index, host));
        for skip in 0..k {
            let mut c: Vec<Vertex> = clique.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
            c.push(v);
            cliques.push((c, bag_index));
        }
    }
    edges.retain(|_| rng.gen_bool(keep));
    let g = Graph::from_edges_dedup(n, &edges).expect("generator emits valid ids");
    (g, TreeDecomposition::new(bags, tree))
}

/// Random bipartite graph of bounded treewidth: a partial `k`-tree with
/// every edge inside a random 2-colouring removed.
pub fn random_bipartite_sparse(n: usize, k: usize, seed: u64) -> (Graph, TreeDecomposition) {
    let (g, td) = partial_ktree(n, k, 0.9, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    side.shuffle(&mut rng);
    let edges: Vec<_> = g.edges().filter(|&(a, b)| side[a] != side[b]).collect();
    (build(n, &edges), td)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate;

    #[test]
    fn families_have_expected_sizes() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(star(5).degree(0), 4);
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(from_pair_mask(4, 0b111111), complete(4));
    }

    #[test]
    fn partial_ktree_decomposition_is_valid() {
        for seed in 0..30 {
            for k in 0..4 {
                let (g, td) = partial_ktree(25, k, 0.8, seed);
                assert!(validate(&g, &td).is_valid(), "seed {seed} k {k}");
                assert!(td.width().unwrap() <= k);
            }
        }
        let (g, td) = partial_ktree(2, 3, 1.0, 0);
        assert!(validate(&g, &td).is_valid());
    }
}
