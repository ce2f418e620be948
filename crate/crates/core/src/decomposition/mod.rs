//! Tree decompositions: representation, validation, heuristic construction,
//! and conversion to nice form.

mod heuristic;
mod nice;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub use heuristic::{heuristic_decomposition, heuristic_decomposition_with, EliminationRule, TieBreak};
pub use nice::{make_nice, NiceNode, NiceTreeDecomposition, NodeKind};

/// A tree decomposition: bags `X_i` indexed by node and an undirected tree over the nodes.
///
/// Bags are kept sorted and duplicate-free. Nothing else is assumed; use
/// [`validate`] to check the decomposition against a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// The decomposition with one bag holding every vertex.
    pub fn single_bag(n: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..n).collect()],
            edges: Vec::new(),
        }
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// `max |X_i| - 1`.
    pub fn width(&self) -> Result<usize> {
        width(self)
    }

    /// Adjacency lists of the decomposition tree.
    pub(crate) fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < self.bags.len() && b < self.bags.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }
}

pub fn width(td: &TreeDecomposition) -> Result<usize> {
    td.bags
        .iter()
        .map(|b| b.len())
        .max()
        .map(|m| m.saturating_sub(1))
        .ok_or(Error::EmptyDecomposition)
}

/// One violated decomposition property, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    VertexOutOfRange { bag: usize, vertex: Vertex },
    UncoveredVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    DisconnectedOccurrence(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "decomposition tree is not a tree: {why}"),
            Violation::VertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} holds vertex {vertex}, which is not in the graph")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Violation::DisconnectedOccurrence(v) => {
                write!(f, "bags containing vertex {v} do not form a connected subtree")
            }
        }
    }
}

/// Every violation found by [`validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the tree shape and the three covering properties of a tree decomposition.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> ValidationReport {
    let mut violations = Vec::new();
    let nodes = td.bags.len();
    let n = g.n();

    if nodes == 0 {
        violations.push(Violation::NotATree("no nodes".into()));
    }
    for &(a, b) in &td.edges {
        if a >= nodes || b >= nodes {
            violations.push(Violation::NotATree(format!(
                "tree edge ({a}, {b}) references a missing node"
            )));
        } else if a == b {
            violations.push(Violation::NotATree(format!("self-loop on node {a}")));
        }
    }
    let adj = td.tree_adjacency();
    if nodes > 0 {
        if td.edges.len() != nodes - 1 {
            violations.push(Violation::NotATree(format!(
                "{} edges on {} nodes",
                td.edges.len(),
                nodes
            )));
        }
        let reached = reachable(&adj, 0, |_| true);
        if reached.iter().filter(|&&r| r).count() != nodes {
            violations.push(Violation::NotATree("disconnected".into()));
        }
    }

    let mut occurrence: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(Violation::VertexOutOfRange { bag: i, vertex: v });
            } else {
                occurrence[v].push(i);
            }
        }
    }
    for (v, occ) in occurrence.iter().enumerate() {
        if occ.is_empty() {
            violations.push(Violation::UncoveredVertex(v));
        }
    }
    for (u, v) in g.edges() {
        let covered = occurrence[u]
            .iter()
            .any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            violations.push(Violation::UncoveredEdge(u, v));
        }
    }
    for (v, occ) in occurrence.iter().enumerate() {
        if occ.len() < 2 {
            continue;
        }
        let holds = |i: usize| td.bags[i].binary_search(&v).is_ok();
        let reached = reachable(&adj, occ[0], holds);
        if occ.iter().any(|&i| !reached[i]) {
            violations.push(Violation::DisconnectedOccurrence(v));
        }
    }
    ValidationReport { violations }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if !seen[b] && allowed(b) {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen
}
