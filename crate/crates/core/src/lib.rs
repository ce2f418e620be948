//! Deciding whether a graph's vertices split into two (or `q`) parts, none of
//! which contains a fixed pattern graph `H`, by dynamic programming over a
//! nice tree decomposition.
//!
//! ```
//! use hbip_core::{generate, heuristic_decomposition, make_nice, solve_clique, SolveOptions};
//!
//! let g = generate::complete(4);
//! let nice = make_nice(&g, &heuristic_decomposition(&g)).unwrap();
//! let d = solve_clique(&g, &nice, 3, &SolveOptions::with_certificate()).unwrap();
//! assert!(d.answer);
//! ```

pub mod decomposition;
pub mod dp;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod qchromatic;
pub mod verify;

pub use decomposition::{
    heuristic_decomposition, heuristic_decomposition_with, make_nice, validate, EliminationRule, NiceNode,
    NiceTreeDecomposition, NodeKind, TieBreak, TreeDecomposition, ValidationReport, Violation,
};
pub use dp::{
    select_engine, solve_bipartition, solve_c4, solve_clique, solve_general, Bipartition, Decision, EngineChoice,
    EngineKind, SolveOptions, Stats,
};
pub use error::{Error, Result};
pub use graph::{Graph, PatternGraph, Variant, Vertex};
pub use oracle::{oracle_bipartition, oracle_qpartition, OracleBudget, OracleDecision};
pub use qchromatic::{min_q, solve_qpartition, QDecision};
pub use verify::{verify_bipartition, verify_partition, CertificateViolation};
