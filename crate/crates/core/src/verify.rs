//! Independent rechecking of partitions returned by the solvers.

use thiserror::Error;

use crate::graph::{find_embedding, Graph, PatternGraph, Variant, Vertex};

/// The first problem found in a claimed partition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {0} is not assigned to any part")]
    Missing(Vertex),
    #[error("part {0} is empty")]
    EmptyPart(String),
    #[error("part {part} contains the pattern on vertices {embedding:?}")]
    ContainsPattern { part: String, embedding: Vec<Vertex> },
}

fn part_name(index: usize, named: bool) -> String {
    match (named, index) {
        (true, 0) => "A".to_string(),
        (true, _) => "B".to_string(),
        (false, k) => k.to_string(),
    }
}

fn check(
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    parts: &[&[Vertex]],
    bipartition: bool,
) -> Result<(), CertificateViolation> {
    let mut seen = vec![false; g.n()];
    for part in parts {
        for &v in *part {
            if v >= g.n() {
                return Err(CertificateViolation::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(CertificateViolation::Overlap(v));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(CertificateViolation::Missing(v));
    }
    for (i, part) in parts.iter().enumerate() {
        if bipartition && part.is_empty() {
            return Err(CertificateViolation::EmptyPart(part_name(i, true)));
        }
        let found = find_embedding(g, Some(part), h, variant).expect("vertices checked in range");
        if let Some(embedding) = found {
            return Err(CertificateViolation::ContainsPattern {
                part: part_name(i, bipartition),
                embedding,
            });
        }
    }
    Ok(())
}

/// Checks that `(a, b)` partitions `V(G)` into nonempty parts free of `H`.
pub fn verify_bipartition(
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    a: &[Vertex],
    b: &[Vertex],
) -> Result<(), CertificateViolation> {
    check(g, h, variant, &[a, b], true)
}

/// Checks that `parts` partition `V(G)` into `H`-free parts; empty parts are allowed.
pub fn verify_partition(
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    parts: &[Vec<Vertex>],
) -> Result<(), CertificateViolation> {
    let slices: Vec<&[Vertex]> = parts.iter().map(Vec::as_slice).collect();
    check(g, h, variant, &slices, false)
}
