//! Simple undirected graphs, pattern graphs, and containment tests.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
        })
    }

    /// Like [`Graph::from_edges`] but silently drops loops and repeated edges.
    pub fn from_edges_dedup(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut clean: Vec<(Vertex, Vertex)> = edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        clean.sort_unstable();
        clean.dedup();
        Self::from_edges(n, &clean)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// The subgraph induced by `vertices`, relabelled to `0..|S|` in ascending id order.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<InducedSubgraph> {
        let n = self.n();
        let mut original: Vec<Vertex> = vertices.to_vec();
        original.sort_unstable();
        original.dedup();
        if let Some(&v) = original.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let mut local = vec![usize::MAX; n];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); original.len()];
        let mut edge_count = 0;
        for (i, &v) in original.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                    if local[w] > i {
                        edge_count += 1;
                    }
                }
            }
        }
        Ok(InducedSubgraph {
            graph: Graph { adj, edge_count },
            original,
        })
    }
}

/// `G[S]` together with the map from its vertex ids back to ids of the host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<Vertex>,
}

/// Largest pattern order representable by [`PatternGraph`].
pub const MAX_PATTERN_ORDER: usize = 32;

/// The fixed pattern `H` with labelled vertices `u_0..u_{r-1}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    rows: Vec<u32>,
}

impl PatternGraph {
    pub fn from_edges(r: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidPattern(format!(
                "pattern needs at least 2 vertices, got {r}"
            )));
        }
        if r > MAX_PATTERN_ORDER {
            return Err(Error::PatternTooLarge {
                order: r,
                max: MAX_PATTERN_ORDER,
            });
        }
        let mut rows = vec![0u32; r];
        for &(a, b) in edges {
            if a >= r || b >= r {
                return Err(Error::InvalidPattern(format!(
                    "edge {{{a}, {b}}} references a label outside 0..{r}"
                )));
            }
            if a == b {
                return Err(Error::InvalidPattern(format!("self-loop on label {a}")));
            }
            if rows[a] & (1 << b) != 0 {
                return Err(Error::InvalidPattern(format!("duplicate edge {{{a}, {b}}}")));
            }
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        Ok(PatternGraph { rows })
    }

    /// `K_r`.
    pub fn complete(r: usize) -> Result<Self> {
        let edges: Vec<_> = (0..r)
            .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
            .collect();
        Self::from_edges(r, &edges)
    }

    /// `C_r`, `r >= 3`.
    pub fn cycle(r: usize) -> Result<Self> {
        if r < 3 {
            return Err(Error::InvalidPattern(format!("cycle needs r >= 3, got {r}")));
        }
        let edges: Vec<_> = (0..r).map(|a| (a, (a + 1) % r)).collect();
        Self::from_edges(r, &edges)
    }

    /// `P_r`: the path on `r` vertices.
    pub fn path(r: usize) -> Result<Self> {
        let edges: Vec<_> = (1..r).map(|a| (a - 1, a)).collect();
        Self::from_edges(r, &edges)
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a] & (1 << b) != 0
    }

    /// Bitmask of the labels adjacent to `a`.
    pub fn neighbor_mask(&self, a: usize) -> u32 {
        self.rows[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.rows[a].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let r = self.order();
        (0..r)
            .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        let r = self.order();
        self.edge_count() == r * (r - 1) / 2
    }

    /// Structural test for the 4-cycle, independent of labelling.
    pub fn is_four_cycle(&self) -> bool {
        self.order() == 4
            && self.edge_count() == 4
            && (0..4).all(|a| self.degree(a) == 2)
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.order(), &self.edges()).expect("pattern edges are simple")
    }
}

/// Which containment relation makes a part invalid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `H` must not appear as a (not necessarily induced) subgraph.
    Subgraph,
    /// `H` must not appear as an induced subgraph.
    Induced,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Subgraph => f.write_str("subgraph"),
            Variant::Induced => f.write_str("induced"),
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "subgraph" => Ok(Variant::Subgraph),
            "induced" => Ok(Variant::Induced),
            other => Err(format!("unknown variant `{other}` (expected subgraph|induced)")),
        }
    }
}

/// Backtracking embedding search of `H` into a vertex subset of `G`.
///
/// Labels are matched in an order where every label after the first of its
/// component has an already-matched neighbour, so candidates come from that
/// neighbour's adjacency list. Candidates are pruned by degree inside the host set.
struct Embedder<'a> {
    g: &'a Graph,
    h: &'a PatternGraph,
    variant: Variant,
    allowed: Vec<bool>,
    host_degree: Vec<usize>,
    order: Vec<usize>,
    /// For each position in `order`, an earlier label adjacent to it (if any).
    anchor: Vec<Option<usize>>,
    image: Vec<Option<Vertex>>,
    used: Vec<bool>,
}

impl<'a> Embedder<'a> {
    fn new(g: &'a Graph, h: &'a PatternGraph, variant: Variant, allowed: Vec<bool>) -> Self {
        let host_degree = (0..g.n())
            .map(|v| {
                if allowed[v] {
                    g.neighbors(v).iter().filter(|&&w| allowed[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let (order, anchor) = match_order(h);
        let r = h.order();
        Embedder {
            g,
            h,
            variant,
            allowed,
            host_degree,
            order,
            anchor,
            image: vec![None; r],
            used: vec![false; g.n()],
        }
    }

    fn fits(&self, label: usize, v: Vertex) -> bool {
        if !self.allowed[v] || self.used[v] || self.host_degree[v] < self.h.degree(label) {
            return false;
        }
        for (other, img) in self.image.iter().enumerate() {
            let Some(w) = *img else { continue };
            let need = self.h.has_edge(label, other);
            let have = self.g.has_edge(v, w);
            match self.variant {
                Variant::Subgraph if need && !have => return false,
                Variant::Induced if need != have => return false,
                _ => {}
            }
        }
        true
    }

    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let label = self.order[depth];
        if self.image[label].is_some() {
            return self.search(depth + 1);
        }
        let candidates: Vec<Vertex> = match self.anchor[depth] {
            Some(a) => self.g.neighbors(self.image[a].expect("anchor matched")).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for v in candidates {
            if self.fits(label, v) {
                self.image[label] = Some(v);
                self.used[v] = true;
                if self.search(depth + 1) {
                    return true;
                }
                self.image[label] = None;
                self.used[v] = false;
            }
        }
        false
    }

    /// Search restricted to embeddings that use `pin` for some label.
    fn search_through(&mut self, pin: Vertex) -> bool {
        if !self.allowed[pin] {
            return false;
        }
        for label in 0..self.h.order() {
            if self.fits(label, pin) {
                self.image[label] = Some(pin);
                self.used[pin] = true;
                if self.search(0) {
                    return true;
                }
                self.image[label] = None;
                self.used[pin] = false;
            }
        }
        false
    }

    fn embedding(&self) -> Vec<Vertex> {
        self.image.iter().map(|v| v.expect("complete embedding")).collect()
    }
}

/// BFS order over `H` that starts each component at a maximum-degree label.
fn match_order(h: &PatternGraph) -> (Vec<usize>, Vec<Option<usize>>) {
    let r = h.order();
    let mut seen = vec![false; r];
    let mut order = Vec::with_capacity(r);
    let mut anchor = Vec::with_capacity(r);
    while order.len() < r {
        let start = (0..r)
            .filter(|&a| !seen[a])
            .max_by_key(|&a| (h.degree(a), std::cmp::Reverse(a)))
            .expect("unseen label remains");
        seen[start] = true;
        order.push(start);
        anchor.push(None);
        let mut head = order.len() - 1;
        while head < order.len() {
            let a = order[head];
            head += 1;
            for (b, s) in seen.iter_mut().enumerate() {
                if !*s && h.has_edge(a, b) {
                    *s = true;
                    order.push(b);
                    anchor.push(Some(a));
                }
            }
        }
    }
    (order, anchor)
}

fn membership(n: usize, set: Option<&[Vertex]>) -> Result<Vec<bool>> {
    match set {
        None => Ok(vec![true; n]),
        Some(s) => {
            let mut allowed = vec![false; n];
            for &v in s {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                allowed[v] = true;
            }
            Ok(allowed)
        }
    }
}

/// An embedding of `H` into `G[S]` (or all of `G` when `set` is `None`), as
/// the image of each label.
pub fn find_embedding(
    g: &Graph,
    set: Option<&[Vertex]>,
    h: &PatternGraph,
    variant: Variant,
) -> Result<Option<Vec<Vertex>>> {
    let allowed = membership(g.n(), set)?;
    let mut e = Embedder::new(g, h, variant, allowed);
    Ok(e.search(0).then(|| e.embedding()))
}

/// Whether `G[S]` contains `H` through the vertex `pin`.
pub fn contains_through(
    g: &Graph,
    set: &[Vertex],
    pin: Vertex,
    h: &PatternGraph,
    variant: Variant,
) -> Result<bool> {
    let allowed = membership(g.n(), Some(set))?;
    if pin >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: pin, n: g.n() });
    }
    Ok(Embedder::new(g, h, variant, allowed).search_through(pin))
}

pub fn contains(g: &Graph, h: &PatternGraph, variant: Variant) -> bool {
    find_embedding(g, None, h, variant)
        .expect("no vertex set given")
        .is_some()
}

/// True iff some injective label map sends every `H`-edge to a `G`-edge.
pub fn has_subgraph(g: &Graph, h: &PatternGraph) -> bool {
    contains(g, h, Variant::Subgraph)
}

/// True iff some injective label map preserves both edges and non-edges.
pub fn has_induced_subgraph(g: &Graph, h: &PatternGraph) -> bool {
    contains(g, h, Variant::Induced)
}

/// True iff `G[S]` does not contain `H` under `variant`.
pub fn is_part_valid(g: &Graph, set: &[Vertex], h: &PatternGraph, variant: Variant) -> Result<bool> {
    Ok(find_embedding(g, Some(set), h, variant)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn k(n: usize) -> Graph {
        generate::complete(n)
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn induced_examples() {
        let k3 = k(4).induced(&[0, 1, 2]).unwrap();
        assert_eq!(k3.graph, k(3));
        assert_eq!(k3.original, vec![0, 1, 2]);

        let empty = k(4).induced(&[]).unwrap();
        assert_eq!(empty.graph.n(), 0);

        let p3 = generate::cycle(5).induced(&[0, 1, 2]).unwrap();
        assert_eq!(p3.graph, generate::path(3));

        assert!(k(3).induced(&[0, 7]).is_err());
    }

    #[test]
    fn induced_keeps_original_ids() {
        let g = generate::cycle(6);
        let sub = g.induced(&[5, 0, 3]).unwrap();
        assert_eq!(sub.original, vec![0, 3, 5]);
        assert!(sub.graph.has_edge(0, 2));
        assert!(!sub.graph.has_edge(0, 1));
        assert_eq!(sub.graph.edge_count(), 1);
    }

    #[test]
    fn subgraph_examples() {
        let c4 = PatternGraph::cycle(4).unwrap();
        let k3 = PatternGraph::complete(3).unwrap();
        let c5 = PatternGraph::cycle(5).unwrap();
        assert!(has_subgraph(&k(4), &c4));
        assert!(!has_subgraph(&generate::path(3), &k3));
        assert!(has_subgraph(&generate::petersen(), &c5));
        assert!(!has_subgraph(&generate::petersen(), &c4));
    }

    #[test]
    fn induced_subgraph_examples() {
        let c4 = PatternGraph::cycle(4).unwrap();
        let p3 = PatternGraph::path(3).unwrap();
        assert!(!has_induced_subgraph(&k(4), &c4));
        assert!(has_induced_subgraph(&generate::cycle(5), &p3));
        assert!(has_induced_subgraph(&generate::complete_bipartite(2, 3), &c4));
    }

    #[test]
    fn part_validity_examples() {
        let k3 = PatternGraph::complete(3).unwrap();
        let c4 = PatternGraph::cycle(4).unwrap();
        let k5 = k(5);
        assert!(is_part_valid(&k5, &[1, 3], &k3, Variant::Subgraph).unwrap());
        assert!(!is_part_valid(&k5, &[0, 2, 4], &k3, Variant::Subgraph).unwrap());
        assert!(is_part_valid(&generate::cycle(6), &[0, 1, 2, 3], &c4, Variant::Induced).unwrap());
    }

    #[test]
    fn contains_through_requires_the_pin() {
        let k3 = PatternGraph::complete(3).unwrap();
        // triangle 0-1-2 plus pendant vertex 3
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(contains_through(&g, &[0, 1, 2, 3], 0, &k3, Variant::Subgraph).unwrap());
        assert!(!contains_through(&g, &[0, 1, 2, 3], 3, &k3, Variant::Subgraph).unwrap());
        assert!(!contains_through(&g, &[0, 2, 3], 0, &k3, Variant::Subgraph).unwrap());
    }

    #[test]
    fn pattern_shapes() {
        assert!(PatternGraph::complete(4).unwrap().is_complete());
        assert!(PatternGraph::cycle(4).unwrap().is_four_cycle());
        assert!(!PatternGraph::path(4).unwrap().is_four_cycle());
        let relabelled = PatternGraph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(relabelled.is_four_cycle());
        assert!(PatternGraph::from_edges(1, &[]).is_err());
        assert!(PatternGraph::cycle(2).is_err());
        assert!(PatternGraph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }
}
