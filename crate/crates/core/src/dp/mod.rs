//! Bipartition solvers over nice tree decompositions.
//!
//! Three engines share one forward DP driver ([`engine::run`]): the clique
//! engine for `H = K_r`, the 4-cycle engine for `H = C_4` (subgraph variant),
//! and the general engine for any small `H` in either variant.

mod c4;
mod clique;
pub mod engine;
mod general;
pub mod sequence;

use std::fmt;
use std::str::FromStr;

pub use c4::{C4Rules, PairSet};
pub use clique::{bag_side_has_clique, CliqueRules};
pub use engine::{EngineRun, PartLabels, PartRules, PartitionState, RunOptions, Stats};
pub use general::{GeneralRules, SequenceSet};
pub use sequence::{gamma, merge, rep_dc, rep_fg, rep_fg_set, Sequence, Slot, MAX_SEQUENCE_LEN};

use crate::decomposition::NiceTreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, PatternGraph, Variant, Vertex};

/// Width caps applied when [`SolveOptions::width_cap`] is unset.
pub const DEFAULT_CLIQUE_WIDTH_CAP: usize = 20;
pub const DEFAULT_C4_WIDTH_CAP: usize = 12;
pub const DEFAULT_GENERAL_WIDTH_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Clique,
    C4,
    General,
}

impl EngineKind {
    pub fn default_width_cap(self) -> usize {
        match self {
            EngineKind::Clique => DEFAULT_CLIQUE_WIDTH_CAP,
            EngineKind::C4 => DEFAULT_C4_WIDTH_CAP,
            EngineKind::General => DEFAULT_GENERAL_WIDTH_CAP,
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Clique => "clique",
            EngineKind::C4 => "c4",
            EngineKind::General => "general",
        })
    }
}

/// Engine requested by the caller; `Auto` picks the most specific one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EngineChoice {
    #[default]
    Auto,
    Clique,
    C4,
    General,
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "clique" => Ok(EngineChoice::Clique),
            "c4" => Ok(EngineChoice::C4),
            "general" => Ok(EngineChoice::General),
            other => Err(format!("unknown engine `{other}` (expected auto, clique, c4 or general)")),
        }
    }
}

/// Resolves an engine choice for a pattern and variant.
pub fn select_engine(h: &PatternGraph, variant: Variant, choice: EngineChoice) -> Result<EngineKind> {
    let unsupported = |engine: &str, reason: String| Error::UnsupportedEngine {
        engine: engine.to_string(),
        reason,
    };
    match choice {
        EngineChoice::Auto if h.is_complete() => Ok(EngineKind::Clique),
        EngineChoice::Auto if h.is_four_cycle() && variant == Variant::Subgraph => Ok(EngineKind::C4),
        EngineChoice::Auto | EngineChoice::General => Ok(EngineKind::General),
        EngineChoice::Clique if h.is_complete() => Ok(EngineKind::Clique),
        EngineChoice::Clique => Err(unsupported("clique", "patterns other than K_r".into())),
        EngineChoice::C4 if !h.is_four_cycle() => Err(unsupported("c4", "patterns other than C4".into())),
        EngineChoice::C4 if variant == Variant::Induced => Err(unsupported("c4", "the induced variant".into())),
        EngineChoice::C4 => Ok(EngineKind::C4),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

impl Bipartition {
    /// Builds a bipartition from DP parts, moving one vertex across if a side
    /// is empty. Both H-freeness variants survive vertex deletion, so the moved
    /// vertex cannot create a copy of `H` in a part that held nothing else.
    fn from_parts(mut a: Vec<Vertex>, mut b: Vec<Vertex>) -> Self {
        if a.is_empty() && b.len() >= 2 {
            a.push(b.remove(0));
        } else if b.is_empty() && a.len() >= 2 {
            b.push(a.pop().expect("nonempty"));
        }
        Bipartition { a, b }
    }
}

/// Answer of a bipartition solver.
#[derive(Clone, Debug)]
pub struct Decision {
    pub answer: bool,
    pub certificate: Option<Bipartition>,
    pub engine: EngineKind,
    pub stats: Stats,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Reconstruct a partition on YES.
    pub certificate: bool,
    /// Overrides the engine's default width cap.
    pub width_cap: Option<usize>,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            certificate: false,
            width_cap: None,
            threads: 1,
        }
    }
}

impl SolveOptions {
    pub fn with_certificate() -> Self {
        SolveOptions {
            certificate: true,
            ..Self::default()
        }
    }
}

pub(crate) fn check_inputs(g: &Graph, nice: &NiceTreeDecomposition) -> Result<()> {
    if nice.vertex_count() != g.n() {
        return Err(Error::DecompositionMismatch {
            decomposition: nice.vertex_count(),
            graph: g.n(),
        });
    }
    Ok(())
}

pub(crate) fn check_width(nice: &NiceTreeDecomposition, engine: EngineKind, cap: Option<usize>) -> Result<()> {
    let cap = cap.unwrap_or(engine.default_width_cap());
    if nice.width() > cap {
        return Err(Error::WidthTooLarge {
            width: nice.width(),
            cap,
        });
    }
    Ok(())
}

pub(crate) fn check_sequence_pattern(h: &PatternGraph) -> Result<()> {
    if h.order() > MAX_SEQUENCE_LEN {
        return Err(Error::PatternTooLarge {
            order: h.order(),
            max: MAX_SEQUENCE_LEN,
        });
    }
    Ok(())
}

fn trivial(engine: EngineKind, answer: bool, n: usize, options: &SolveOptions) -> Decision {
    let certificate = (answer && options.certificate).then(|| Bipartition {
        a: vec![0],
        b: (1..n).collect(),
    });
    Decision {
        answer,
        certificate,
        engine,
        stats: Stats::default(),
    }
}

fn bipartition_options(options: &SolveOptions) -> RunOptions {
    RunOptions {
        parts: 2,
        labels: PartLabels::Fixed,
        keep_tables: options.certificate,
        threads: options.threads,
    }
}

fn decide<X: Clone>(run: EngineRun<'_, X>, n: usize, engine: EngineKind, options: &SolveOptions) -> Result<Decision> {
    let answer = run.feasible() && n >= 2;
    let certificate = if answer && options.certificate {
        let mut parts = run.extract_certificate()?;
        let b = parts.pop().expect("two parts");
        let a = parts.pop().expect("two parts");
        Some(Bipartition::from_parts(a, b))
    } else {
        None
    };
    Ok(Decision {
        answer,
        certificate,
        engine,
        stats: run.stats(),
    })
}

/// Whether `V(G)` splits into two nonempty parts, neither containing `K_r`.
pub fn solve_clique(g: &Graph, nice: &NiceTreeDecomposition, r: usize, options: &SolveOptions) -> Result<Decision> {
    check_inputs(g, nice)?;
    if r < 2 {
        return Err(Error::InvalidPattern(format!("K_{r} needs r >= 2")));
    }
    let n = g.n();
    if n < 2 {
        return Ok(trivial(EngineKind::Clique, false, n, options));
    }
    // Every clique sits inside some bag.
    if r > nice.width() + 1 {
        return Ok(trivial(EngineKind::Clique, true, n, options));
    }
    check_width(nice, EngineKind::Clique, options.width_cap)?;
    let rules = CliqueRules { g, r };
    let run = engine::run(&rules, nice, bipartition_options(options))?;
    decide(run, n, EngineKind::Clique, options)
}

/// Whether `V(G)` splits into two nonempty parts, neither containing a
/// 4-cycle as a subgraph.
pub fn solve_c4(g: &Graph, nice: &NiceTreeDecomposition, options: &SolveOptions) -> Result<Decision> {
    check_inputs(g, nice)?;
    let n = g.n();
    if n < 2 {
        return Ok(trivial(EngineKind::C4, false, n, options));
    }
    check_width(nice, EngineKind::C4, options.width_cap)?;
    let rules = C4Rules { g };
    let run = engine::run(&rules, nice, bipartition_options(options))?;
    decide(run, n, EngineKind::C4, options)
}

/// Whether `V(G)` splits into two nonempty parts, neither containing `H`
/// (as a subgraph or as an induced subgraph, per `variant`).
pub fn solve_general(
    g: &Graph,
    nice: &NiceTreeDecomposition,
    h: &PatternGraph,
    variant: Variant,
    options: &SolveOptions,
) -> Result<Decision> {
    check_inputs(g, nice)?;
    check_sequence_pattern(h)?;
    let n = g.n();
    if n < 2 {
        return Ok(trivial(EngineKind::General, false, n, options));
    }
    check_width(nice, EngineKind::General, options.width_cap)?;
    let rules = GeneralRules { g, h, variant };
    let run = engine::run(&rules, nice, bipartition_options(options))?;
    decide(run, n, EngineKind::General, options)
}

/// Dispatches to the engine chosen by [`select_engine`].
pub fn solve_bipartition(
    g: &Graph,
    nice: &NiceTreeDecomposition,
    h: &PatternGraph,
    variant: Variant,
    choice: EngineChoice,
    options: &SolveOptions,
) -> Result<Decision> {
    match select_engine(h, variant, choice)? {
        EngineKind::Clique => solve_clique(g, nice, h.order(), options),
        EngineKind::C4 => solve_c4(g, nice, options),
        EngineKind::General => solve_general(g, nice, h, variant, options),
    }
}

/// Runs the clique engine and keeps every table, for inspection.
pub fn run_clique<'a>(
    g: &Graph,
    nice: &'a NiceTreeDecomposition,
    r: usize,
    options: RunOptions,
) -> Result<EngineRun<'a, ()>> {
    check_inputs(g, nice)?;
    engine::run(&CliqueRules { g, r }, nice, options)
}

pub fn run_c4<'a>(g: &Graph, nice: &'a NiceTreeDecomposition, options: RunOptions) -> Result<EngineRun<'a, PairSet>> {
    check_inputs(g, nice)?;
    engine::run(&C4Rules { g }, nice, options)
}

pub fn run_general<'a>(
    g: &Graph,
    nice: &'a NiceTreeDecomposition,
    h: &PatternGraph,
    variant: Variant,
    options: RunOptions,
) -> Result<EngineRun<'a, SequenceSet>> {
    check_inputs(g, nice)?;
    check_sequence_pattern(h)?;
    engine::run(&GeneralRules { g, h, variant }, nice, options)
}
