use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{validate, TreeDecomposition};
use crate::graph::{Graph, Vertex};

/// Greedy score used to pick the next vertex to eliminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationRule {
    /// Fewest fill edges among the remaining neighbours.
    MinFill,
    /// Fewest remaining neighbours.
    MinDegree,
}

/// How equal scores are ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    SmallestId,
    /// Ties broken by a seeded random permutation of the vertex ids.
    Seeded(u64),
}

/// Min-fill elimination with ties broken by smallest vertex id.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    heuristic_decomposition_with(g, EliminationRule::MinFill, TieBreak::SmallestId)
}

pub fn heuristic_decomposition_with(g: &Graph, rule: EliminationRule, tie: TieBreak) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::single_bag(0);
    }
    let rank: Vec<usize> = match tie {
        TieBreak::SmallestId => (0..n).collect(),
        TieBreak::Seeded(seed) => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            perm
        }
    };

    let mut adj: Vec<HashSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let score = |adj: &[HashSet<Vertex>], v: Vertex| -> usize {
        match rule {
            EliminationRule::MinDegree => adj[v].len(),
            EliminationRule::MinFill => fill_in(adj, v),
        }
    };
    let mut current: Vec<usize> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize, Vertex)> = (0..n).map(|v| (current[v], rank[v], v)).collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0usize; n];
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(n);

    while let Some((_, _, v)) = queue.pop_first() {
        eliminated[v] = true;
        position[v] = bags.len();
        let mut nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        nbrs.sort_unstable();

        let mut bag = nbrs.clone();
        bag.push(v);
        bags.push(bag);

        for &x in &nbrs {
            adj[x].remove(&v);
        }
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if adj[x].insert(y) {
                    adj[y].insert(x);
                }
            }
        }

        let mut touched: BTreeSet<Vertex> = nbrs.iter().copied().collect();
        if rule == EliminationRule::MinFill {
            for &x in &nbrs {
                touched.extend(adj[x].iter().copied());
            }
        }
        for w in touched {
            if eliminated[w] {
                continue;
            }
            let s = score(&adj, w);
            if s != current[w] {
                queue.remove(&(current[w], rank[w], w));
                current[w] = s;
                queue.insert((s, rank[w], w));
            }
        }
    }

    // Parent of a bag is the bag of its earliest-eliminated higher neighbour.
    let order_of: Vec<Vertex> = bags.iter().map(|b| *b.last().expect("bag holds its vertex")).collect();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let v = order_of[i];
        let parent = bag.iter().filter(|&&w| w != v).map(|&w| position[w]).min();
        match parent {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }

    let td = TreeDecomposition::new(bags, edges);
    let report = validate(g, &td);
    assert!(report.is_valid(), "elimination produced an invalid decomposition: {report}");
    td
}

fn fill_in(adj: &[HashSet<Vertex>], v: Vertex) -> usize {
    let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !adj[x].contains(&y) {
                missing += 1;
            }
        }
    }
    missing
}
