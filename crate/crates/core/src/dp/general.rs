use std::collections::HashMap;

use super::engine::PartRules;
use super::sequence::{in_gamma, merge, rep_fg, Sequence, Slot};
use crate::graph::{Graph, PatternGraph, Variant, Vertex};

/// Sorted set of the sequences that some partial embedding realises.
pub type SequenceSet = Vec<Sequence>;

/// Rules for an arbitrary pattern `H`: a part keeps every partial embedding of
/// `H` into it, written as a sequence over bag vertices, `fg` and `dc`. The
/// part stays valid while no sequence is free of `dc`.
pub struct GeneralRules<'g> {
    pub g: &'g Graph,
    pub h: &'g PatternGraph,
    pub variant: Variant,
}

impl GeneralRules<'_> {
    /// Whether `v` may realise label `at` of `s`, given the other labels.
    fn can_place(&self, s: &Sequence, at: usize, v: Vertex) -> bool {
        if self.h.neighbor_mask(at) & s.fg_mask() != 0 {
            return false;
        }
        s.iter().enumerate().all(|(x, slot)| match slot.vertex() {
            Some(u) => {
                let in_h = self.h.has_edge(at, x);
                let in_g = self.g.has_edge(u, v);
                match self.variant {
                    Variant::Subgraph => !in_h || in_g,
                    Variant::Induced => in_h == in_g,
                }
            }
            None => true,
        })
    }
}

fn normalise(mut set: SequenceSet) -> SequenceSet {
    set.sort_unstable();
    set.dedup();
    set
}

impl PartRules for GeneralRules<'_> {
    type Aux = SequenceSet;

    fn leaf(&self) -> SequenceSet {
        vec![Sequence::all_dc(self.h.order())]
    }

    fn introduce(&self, _: &[Vertex], v: Vertex, aux: &SequenceSet) -> Option<SequenceSet> {
        let mut out = aux.clone();
        for s in aux {
            for at in 0..s.len() {
                if s[at] != Slot::Dc || !self.can_place(s, at, v) {
                    continue;
                }
                let placed = s.with(at, Slot::bag(v));
                if !placed.has_dc() {
                    return None;
                }
                out.push(placed);
            }
        }
        Some(normalise(out))
    }

    fn forget(&self, _: &[Vertex], v: Vertex, aux: &SequenceSet) -> Option<SequenceSet> {
        let mut out = Vec::with_capacity(aux.len());
        for s in aux {
            let t = rep_fg(s, v);
            if !in_gamma(&t, self.h) {
                continue;
            }
            if !t.has_dc() {
                return None;
            }
            out.push(t);
        }
        Some(normalise(out))
    }

    fn join(&self, _: &[Vertex], left: &SequenceSet, right: &SequenceSet) -> Option<SequenceSet> {
        let mut by_skeleton: HashMap<Sequence, Vec<&Sequence>> = HashMap::new();
        for s in left {
            by_skeleton.entry(s.skeleton()).or_default().push(s);
        }
        let mut out = Vec::new();
        for t in right {
            let Some(group) = by_skeleton.get(&t.skeleton()) else {
                continue;
            };
            for s in group {
                if s.fg_mask() & t.fg_mask() != 0 {
                    continue;
                }
                let m = merge(s, t).expect("same skeleton and disjoint fg positions merge");
                if !m.has_dc() {
                    return None;
                }
                out.push(m);
            }
        }
        Some(normalise(out))
    }
}
