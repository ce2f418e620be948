//! Partial-embedding sequences tracked by the general engine.
//!
//! A sequence assigns each pattern label one of: a bag vertex of the part,
//! `Fg` (realised by a forgotten vertex of the part), or `Dc` (not realised yet).

use std::fmt;
use std::ops::Deref;

use arrayvec::ArrayVec;

use crate::graph::{PatternGraph, Vertex};

/// Largest pattern order the general engine accepts.
pub const MAX_SEQUENCE_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Bag(u32),
    Fg,
    Dc,
}

impl Slot {
    pub fn bag(v: Vertex) -> Slot {
        Slot::Bag(u32::try_from(v).expect("vertex id fits in u32"))
    }

    pub fn vertex(self) -> Option<Vertex> {
        match self {
            Slot::Bag(v) => Some(v as Vertex),
            _ => None,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Bag(v) => write!(f, "{v}"),
            Slot::Fg => f.write_str("fg"),
            Slot::Dc => f.write_str("dc"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence(ArrayVec<Slot, MAX_SEQUENCE_LEN>);

impl Sequence {
    /// Panics if `slots` is longer than [`MAX_SEQUENCE_LEN`].
    pub fn new(slots: &[Slot]) -> Self {
        Sequence(slots.iter().copied().collect())
    }

    pub fn all_dc(r: usize) -> Self {
        Sequence((0..r).map(|_| Slot::Dc).collect())
    }

    pub fn has_dc(&self) -> bool {
        self.0.contains(&Slot::Dc)
    }

    pub fn position_of(&self, v: Vertex) -> Option<usize> {
        let slot = Slot::bag(v);
        self.0.iter().position(|&s| s == slot)
    }

    pub fn with(&self, at: usize, slot: Slot) -> Self {
        let mut out = self.clone();
        out.0[at] = slot;
        out
    }

    /// Bitmask of `Fg` positions.
    pub fn fg_mask(&self) -> u32 {
        self.mask_of(Slot::Fg)
    }

    pub fn dc_mask(&self) -> u32 {
        self.mask_of(Slot::Dc)
    }

    fn mask_of(&self, slot: Slot) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == slot)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// The sequence with every `Fg` turned into `Dc`.
    pub fn skeleton(&self) -> Sequence {
        Sequence(
            self.0
                .iter()
                .map(|&s| if s == Slot::Fg { Slot::Dc } else { s })
                .collect(),
        )
    }
}

impl Deref for Sequence {
    type Target = [Slot];

    fn deref(&self) -> &[Slot] {
        &self.0
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Whether `s` avoids repeated bag vertices and has no `Fg` position joined by an
/// `H`-edge to a `Dc` position.
pub fn in_gamma(s: &Sequence, h: &PatternGraph) -> bool {
    let mut seen: ArrayVec<Slot, MAX_SEQUENCE_LEN> = ArrayVec::new();
    for &slot in s.iter() {
        if let Slot::Bag(_) = slot {
            if seen.contains(&slot) {
                return false;
            }
            seen.push(slot);
        }
    }
    let dc = s.dc_mask();
    let fg = s.fg_mask();
    (0..s.len()).all(|l| fg >> l & 1 == 0 || h.neighbor_mask(l) & dc == 0)
}

/// Every sequence over `side ∪ {fg, dc}` in the admissible set for this part.
pub fn gamma(side: &[Vertex], h: &PatternGraph) -> Vec<Sequence> {
    let r = h.order();
    assert!(r <= MAX_SEQUENCE_LEN, "pattern order {r} exceeds {MAX_SEQUENCE_LEN}");
    let alphabet: Vec<Slot> = side
        .iter()
        .map(|&v| Slot::bag(v))
        .chain([Slot::Fg, Slot::Dc])
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn extend(
        alphabet: &[Slot],
        r: usize,
        h: &PatternGraph,
        current: &mut Vec<Slot>,
        out: &mut Vec<Sequence>,
    ) {
        if current.len() == r {
            let s = Sequence::new(current);
            if in_gamma(&s, h) {
                out.push(s);
            }
            return;
        }
        for &slot in alphabet {
            if matches!(slot, Slot::Bag(_)) && current.contains(&slot) {
                continue;
            }
            current.push(slot);
            extend(alphabet, r, h, current, out);
            current.pop();
        }
    }
    extend(&alphabet, r, h, &mut current, &mut out);
    out.sort();
    out
}

fn replace(s: &Sequence, v: Vertex, with: Slot) -> Sequence {
    match s.position_of(v) {
        Some(at) => s.with(at, with),
        None => s.clone(),
    }
}

/// Replaces `v` (if present) by `dc`.
pub fn rep_dc(s: &Sequence, v: Vertex) -> Sequence {
    replace(s, v, Slot::Dc)
}

/// Replaces `v` (if present) by `fg`.
pub fn rep_fg(s: &Sequence, v: Vertex) -> Sequence {
    replace(s, v, Slot::Fg)
}

/// Elementwise [`rep_fg`], sorted and deduplicated.
pub fn rep_fg_set(set: &[Sequence], v: Vertex) -> Vec<Sequence> {
    let mut out: Vec<Sequence> = set.iter().map(|s| rep_fg(s, v)).collect();
    out.sort();
    out.dedup();
    out
}

/// Combines two sequences from the children of a join: bag positions must
/// agree, and each `fg` is contributed by exactly one side.
pub fn merge(a: &Sequence, b: &Sequence) -> Option<Sequence> {
    if a.len() != b.len() {
        return None;
    }
    let mut out = a.clone();
    for (i, (&x, &y)) in a.iter().zip(b.iter()).enumerate() {
        out.0[i] = match (x, y) {
            (Slot::Dc, Slot::Dc) => Slot::Dc,
            (Slot::Fg, Slot::Dc) | (Slot::Dc, Slot::Fg) => Slot::Fg,
            (Slot::Bag(p), Slot::Bag(q)) if p == q => x,
            _ => return None,
        };
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Slot::{Dc, Fg};

    fn seq(slots: &[Slot]) -> Sequence {
        Sequence::new(slots)
    }

    const X: Slot = Slot::Bag(7);
    const Y: Slot = Slot::Bag(8);
    const V: Slot = Slot::Bag(3);

    #[test]
    fn gamma_of_empty_side_for_k2() {
        let k2 = PatternGraph::complete(2).unwrap();
        assert_eq!(gamma(&[], &k2), vec![seq(&[Fg, Fg]), seq(&[Dc, Dc])]);
    }

    #[test]
    fn gamma_of_single_vertex_for_k2() {
        let k2 = PatternGraph::complete(2).unwrap();
        let g = gamma(&[7], &k2);
        assert_eq!(g.len(), 6);
        assert!(!g.contains(&seq(&[X, X])));
        assert!(!g.contains(&seq(&[Fg, Dc])));
        assert!(!g.contains(&seq(&[Dc, Fg])));
        assert!(g.contains(&seq(&[X, Fg])));
    }

    #[test]
    fn gamma_of_empty_side_for_p3() {
        let p3 = PatternGraph::path(3).unwrap();
        let g = gamma(&[], &p3);
        // Label 1 is adjacent to both others, so an fg/dc mix survives only
        // when both endpoints of every edge agree: all-fg or all-dc.
        assert_eq!(g, vec![seq(&[Fg, Fg, Fg]), seq(&[Dc, Dc, Dc])]);
    }

    #[test]
    fn gamma_with_isolated_label_allows_mixing() {
        let h = PatternGraph::from_edges(3, &[(0, 1)]).unwrap();
        let g = gamma(&[], &h);
        assert_eq!(g.len(), 4);
        assert!(g.contains(&seq(&[Fg, Fg, Dc])));
        assert!(g.contains(&seq(&[Dc, Dc, Fg])));
    }

    #[test]
    fn rep_dc_examples() {
        assert_eq!(rep_dc(&seq(&[V, X, Fg]), 3), seq(&[Dc, X, Fg]));
        assert_eq!(rep_dc(&seq(&[X, Y, Dc]), 3), seq(&[X, Y, Dc]));
        assert_eq!(rep_dc(&seq(&[Fg, V, Dc]), 3), seq(&[Fg, Dc, Dc]));
    }

    #[test]
    fn rep_fg_examples() {
        assert_eq!(rep_fg(&seq(&[V, X, Dc]), 3), seq(&[Fg, X, Dc]));
        assert_eq!(
            rep_fg_set(&[seq(&[V, X, Dc]), seq(&[X, V, Dc])], 3),
            vec![seq(&[X, Fg, Dc]), seq(&[Fg, X, Dc])]
        );
        assert_eq!(rep_fg(&seq(&[X, Y, Fg]), 3), seq(&[X, Y, Fg]));
    }

    #[test]
    fn merge_examples() {
        let v1 = Slot::Bag(1);
        let v2 = Slot::Bag(2);
        assert_eq!(
            merge(&seq(&[Dc, Dc, v1, v2, Fg, Fg]), &seq(&[Fg, Fg, v1, v2, Dc, Dc])),
            Some(seq(&[Fg, Fg, v1, v2, Fg, Fg]))
        );
        assert_eq!(merge(&seq(&[X, Dc]), &seq(&[X, Dc])), Some(seq(&[X, Dc])));
        assert_eq!(merge(&seq(&[Fg, Dc]), &seq(&[Fg, Dc])), None);
        assert_eq!(merge(&seq(&[X, Dc]), &seq(&[Y, Dc])), None);
        assert_eq!(merge(&seq(&[X, Dc]), &seq(&[Fg, Dc])), None);
    }

    #[test]
    fn skeleton_and_masks() {
        let s = seq(&[Fg, X, Dc, Fg]);
        assert_eq!(s.fg_mask(), 0b1001);
        assert_eq!(s.dc_mask(), 0b0100);
        assert_eq!(s.skeleton(), seq(&[Dc, X, Dc, Dc]));
    }
}
