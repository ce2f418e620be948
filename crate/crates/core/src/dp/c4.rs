use super::engine::PartRules;
use crate::graph::{Graph, Vertex};

/// Sorted pairs `(x, y)`, `x < y`, of bag vertices of a part that already
/// have exactly one common neighbour among the part's forgotten vertices.
pub type PairSet = Vec<(Vertex, Vertex)>;

/// Rules for parts that must not contain a 4-cycle as a subgraph.
///
/// A forgotten vertex has no neighbours outside the processed subtree, so the
/// only way it can still close a 4-cycle is as the vertex opposite a
/// not-yet-adjacent vertex across a pair of bag vertices. Those pairs are the
/// whole memory of a part.
pub struct C4Rules<'g> {
    pub g: &'g Graph,
}

impl C4Rules<'_> {
    fn common_neighbour_in(&self, side: &[Vertex], x: Vertex, y: Vertex, skip: Vertex) -> bool {
        side.iter()
            .any(|&z| z != skip && z != x && z != y && self.g.has_edge(z, x) && self.g.has_edge(z, y))
    }

    fn neighbours_in(&self, side: &[Vertex], v: Vertex) -> Vec<Vertex> {
        side.iter().copied().filter(|&u| self.g.has_edge(u, v)).collect()
    }
}

fn pairs(set: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    set.iter()
        .enumerate()
        .flat_map(move |(i, &x)| set[i + 1..].iter().map(move |&y| (x.min(y), x.max(y))))
}

impl PartRules for C4Rules<'_> {
    type Aux = PairSet;

    fn leaf(&self) -> PairSet {
        Vec::new()
    }

    fn introduce(&self, side: &[Vertex], v: Vertex, aux: &PairSet) -> Option<PairSet> {
        let nbrs = self.neighbours_in(side, v);
        for (x, y) in pairs(&nbrs) {
            if aux.binary_search(&(x, y)).is_ok() || self.common_neighbour_in(side, x, y, v) {
                return None;
            }
        }
        Some(aux.clone())
    }

    fn forget(&self, side: &[Vertex], v: Vertex, aux: &PairSet) -> Option<PairSet> {
        let mut next: PairSet = aux.iter().copied().filter(|&(x, y)| x != v && y != v).collect();
        let nbrs = self.neighbours_in(side, v);
        for (x, y) in pairs(&nbrs) {
            if next.binary_search(&(x, y)).is_ok() || self.common_neighbour_in(side, x, y, v) {
                return None;
            }
        }
        next.extend(pairs(&nbrs));
        next.sort_unstable();
        Some(next)
    }

    fn join(&self, _: &[Vertex], left: &PairSet, right: &PairSet) -> Option<PairSet> {
        let mut out = Vec::with_capacity(left.len() + right.len());
        let (mut i, mut j) = (0, 0);
        while i < left.len() && j < right.len() {
            match left[i].cmp(&right[j]) {
                std::cmp::Ordering::Less => {
                    out.push(left[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(right[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&left[i..]);
        out.extend_from_slice(&right[j..]);
        Some(out)
    }
}
