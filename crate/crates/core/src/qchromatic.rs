//! Partitions into `q` parts (empty parts allowed), each free of `H`, and the
//! search for the smallest such `q`.

use crate::decomposition::NiceTreeDecomposition;
use crate::dp::{
    check_inputs, check_sequence_pattern, check_width, engine, select_engine, C4Rules, CliqueRules, EngineChoice,
    EngineKind, GeneralRules, PartLabels, PartRules, RunOptions, SolveOptions,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, PatternGraph, Variant, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDecision {
    pub feasible: bool,
    /// Set by [`min_q`].
    pub q_min: Option<usize>,
    /// Part `k` of the partition; some parts may be empty.
    pub certificate: Option<Vec<Vec<Vertex>>>,
}

fn run_rules<R: PartRules>(
    rules: &R,
    nice: &NiceTreeDecomposition,
    q: usize,
    options: &SolveOptions,
) -> Result<QDecision> {
    let run = engine::run(
        rules,
        nice,
        RunOptions {
            parts: q,
            labels: PartLabels::Canonical,
            keep_tables: options.certificate,
            threads: options.threads,
        },
    )?;
    let feasible = run.feasible();
    let certificate = if feasible && options.certificate {
        Some(run.extract_certificate()?)
    } else {
        None
    };
    Ok(QDecision {
        feasible,
        q_min: None,
        certificate,
    })
}

/// Whether `V(G)` splits into `q` parts (empty parts allowed), none containing `H`.
pub fn solve_qpartition(
    g: &Graph,
    nice: &NiceTreeDecomposition,
    h: &PatternGraph,
    variant: Variant,
    q: usize,
    choice: EngineChoice,
    options: &SolveOptions,
) -> Result<QDecision> {
    check_inputs(g, nice)?;
    if q == 0 {
        return Err(Error::ZeroParts);
    }
    if q > u8::MAX as usize {
        return Err(Error::TooManyParts { q, max: u8::MAX as usize });
    }
    let kind = select_engine(h, variant, choice)?;
    if kind == EngineKind::Clique && h.order() > nice.width() + 1 {
        let mut parts = vec![Vec::new(); q];
        parts[0] = (0..g.n()).collect();
        return Ok(QDecision {
            feasible: true,
            q_min: None,
            certificate: options.certificate.then_some(parts),
        });
    }
    check_width(nice, kind, options.width_cap)?;
    match kind {
        EngineKind::Clique => run_rules(&CliqueRules { g, r: h.order() }, nice, q, options),
        EngineKind::C4 => run_rules(&C4Rules { g }, nice, q, options),
        EngineKind::General => {
            check_sequence_pattern(h)?;
            run_rules(&GeneralRules { g, h, variant }, nice, q, options)
        }
    }
}

/// The smallest feasible `q`, searched upward from 1. When `H` has an edge a
/// proper colouring with `width + 1` colours is always feasible, so the search
/// stops there; singletons bound it by `n` in any case.
pub fn min_q(
    g: &Graph,
    nice: &NiceTreeDecomposition,
    h: &PatternGraph,
    variant: Variant,
    choice: EngineChoice,
    options: &SolveOptions,
) -> Result<QDecision> {
    let limit = (nice.width() + 1).max(g.n()).max(1);
    for q in 1..=limit {
        let mut d = solve_qpartition(g, nice, h, variant, q, choice, options)?;
        if d.feasible {
            d.q_min = Some(q);
            return Ok(d);
        }
    }
    unreachable!("a partition into singletons is always H-free")
}
