use super::engine::PartRules;
use crate::graph::{Graph, Vertex};

/// `K_r`-freeness is decided by the bag alone: every clique of a graph lies
/// inside some bag, so a part only needs checking when a vertex is introduced.
pub struct CliqueRules<'g> {
    pub g: &'g Graph,
    pub r: usize,
}

impl PartRules for CliqueRules<'_> {
    type Aux = ();

    fn leaf(&self) {}

    fn introduce(&self, side: &[Vertex], v: Vertex, _: &()) -> Option<()> {
        let candidates: Vec<Vertex> = side.iter().copied().filter(|&u| self.g.has_edge(u, v)).collect();
        (!has_clique(self.g, &candidates, self.r - 1)).then_some(())
    }

    fn forget(&self, _: &[Vertex], _: Vertex, _: &()) -> Option<()> {
        Some(())
    }

    fn join(&self, _: &[Vertex], _: &(), _: &()) -> Option<()> {
        Some(())
    }
}

/// Whether `set` contains `r` pairwise adjacent vertices.
pub fn bag_side_has_clique(g: &Graph, set: &[Vertex], r: usize) -> bool {
    has_clique(g, set, r)
}

fn has_clique(g: &Graph, candidates: &[Vertex], r: usize) -> bool {
    if r == 0 {
        return true;
    }
    if candidates.len() < r {
        return false;
    }
    candidates.iter().enumerate().any(|(i, &u)| {
        let rest: Vec<Vertex> = candidates[i + 1..].iter().copied().filter(|&w| g.has_edge(u, w)).collect();
        has_clique(g, &rest, r - 1)
    })
}
