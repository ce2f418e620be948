//! Argument handling and orchestration behind the `hbip` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hbip_core::{
    heuristic_decomposition_with, make_nice, min_q, oracle_bipartition, oracle_qpartition, select_engine,
    solve_bipartition, solve_qpartition, verify_bipartition, verify_partition, EliminationRule, EngineChoice,
    Error as CoreError, Graph, OracleBudget, PatternGraph, QDecision, SolveOptions, TieBreak, Variant, Vertex,
};
use thiserror::Error;

use crate::formats::{parse_gr, parse_td, read, PatternSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bipartition,
    Qpartition,
    MinQ,
}

#[derive(Debug, Parser)]
#[command(name = "hbip", version, about = "Split a graph into parts that avoid a pattern graph H")]
pub struct Args {
    /// Input graph (.gr, 1-based ids).
    #[arg(long)]
    pub graph: PathBuf,
    /// Tree decomposition (.td); a min-fill heuristic is used when absent.
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// K<r>, C<r>, P<r>, or a .pat file.
    #[arg(long)]
    pub pattern: String,
    #[arg(long, default_value = "subgraph")]
    pub variant: Variant,
    #[arg(long, value_enum, default_value = "bipartition")]
    pub mode: Mode,
    /// Number of parts; required with --mode qpartition.
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, default_value = "auto")]
    pub engine: EngineChoice,
    /// Print the partition on YES.
    #[arg(long)]
    pub certificate: bool,
    /// Recheck the answer by exhaustive search.
    #[arg(long)]
    pub oracle_check: bool,
    #[arg(long, env = "HBIP_WIDTH_CAP")]
    pub width_cap: Option<usize>,
    /// Tie-break seed for the heuristic decomposition.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// A failed run, mapped to the process exit code.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Refused(_) => 3,
            Failure::Inconsistent(_) => 4,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::WidthTooLarge { .. } | CoreError::BudgetExceeded(_) | CoreError::PatternTooLarge { .. } => {
                Failure::Refused(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Validated inputs of a run.
pub struct RunConfig {
    pub graph: Graph,
    pub pattern: PatternGraph,
    pub td_text: Option<String>,
    pub variant: Variant,
    pub mode: Mode,
    pub q: Option<usize>,
    pub engine: EngineChoice,
    pub certificate: bool,
    pub oracle_check: bool,
    pub width_cap: Option<usize>,
    pub seed: Option<u64>,
    pub threads: usize,
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<RunConfig, Failure> {
        let text = read(&args.graph).map_err(Failure::Usage)?;
        let graph = parse_gr(&text).map_err(|e| Failure::Usage(format!("{}: {e}", args.graph.display())))?;
        let pattern = PatternSpec::parse(&args.pattern).resolve().map_err(Failure::Usage)?;
        let td_text = match &args.td {
            Some(path) => Some(read(path).map_err(Failure::Usage)?),
            None => None,
        };
        match (args.mode, args.q) {
            (Mode::Qpartition, None) => return Err(Failure::Usage("--mode qpartition requires --q".into())),
            (Mode::Qpartition, Some(0)) => return Err(Failure::Usage("--q must be at least 1".into())),
            (Mode::Bipartition | Mode::MinQ, Some(_)) => {
                return Err(Failure::Usage("--q is only valid with --mode qpartition".into()))
            }
            _ => {}
        }
        if args.threads == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        select_engine(&pattern, args.variant, args.engine).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(RunConfig {
            graph,
            pattern,
            td_text,
            variant: args.variant,
            mode: args.mode,
            q: args.q,
            engine: args.engine,
            certificate: args.certificate,
            oracle_check: args.oracle_check,
            width_cap: args.width_cap,
            seed: args.seed,
            threads: args.threads,
        })
    }
}

fn ids(vs: &[Vertex]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

/// Solves the configured problem, writes the report to `out` and
/// diagnostics to `diag`. Returns whether the answer was YES.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<bool, Failure> {
    let g = &config.graph;
    let td = match &config.td_text {
        Some(text) => parse_td(text, g).map_err(|e| Failure::Usage(format!("decomposition: {e}")))?,
        None => {
            let tie = config.seed.map_or(TieBreak::SmallestId, TieBreak::Seeded);
            let td = heuristic_decomposition_with(g, EliminationRule::MinFill, tie);
            writeln!(diag, "heuristic decomposition width: {}", td.width()?).map_err(io)?;
            td
        }
    };
    let nice = make_nice(g, &td)?;
    let budget = OracleBudget::default();
    let options = SolveOptions {
        certificate: config.certificate,
        width_cap: config.width_cap,
        threads: config.threads,
    };
    let (h, variant) = (&config.pattern, config.variant);

    match config.mode {
        Mode::Bipartition => {
            // Refuse before solving so no answer is printed without its check.
            let oracle = if config.oracle_check {
                Some(oracle_bipartition(g, h, variant, &budget)?)
            } else {
                None
            };
            let d = solve_bipartition(g, &nice, h, variant, config.engine, &options)?;
            writeln!(diag, "engine: {}, nodes: {}, peak states: {}", d.engine, d.stats.nodes, d.stats.peak_states)
                .map_err(io)?;
            writeln!(out, "{}", yes_no(d.answer)).map_err(io)?;
            if let Some(c) = &d.certificate {
                verify_bipartition(g, h, variant, &c.a, &c.b)
                    .map_err(|e| Failure::Inconsistent(format!("certificate rejected: {e}")))?;
                writeln!(out, "A: {}", ids(&c.a)).map_err(io)?;
                writeln!(out, "B: {}", ids(&c.b)).map_err(io)?;
            }
            if let Some(o) = oracle {
                report_oracle(out, d.answer, o.answer)?;
            }
            Ok(d.answer)
        }
        Mode::Qpartition => {
            let q = config.q.expect("validated");
            let oracle = if config.oracle_check {
                Some(oracle_qpartition(g, h, variant, q, &budget)?)
            } else {
                None
            };
            let d = solve_qpartition(g, &nice, h, variant, q, config.engine, &options)?;
            writeln!(out, "{}", yes_no(d.feasible)).map_err(io)?;
            print_parts(out, g, h, variant, &d)?;
            if let Some(o) = oracle {
                report_oracle(out, d.feasible, o.feasible)?;
            }
            Ok(d.feasible)
        }
        Mode::MinQ => {
            let oracle = if config.oracle_check {
                Some(oracle_min_q(g, h, variant, &budget)?)
            } else {
                None
            };
            let d = min_q(g, &nice, h, variant, config.engine, &options)?;
            let q = d.q_min.expect("min_q sets q_min");
            writeln!(out, "YES").map_err(io)?;
            writeln!(out, "q_min: {q}").map_err(io)?;
            print_parts(out, g, h, variant, &d)?;
            if let Some(expected) = oracle {
                if expected == q {
                    writeln!(out, "oracle: agree").map_err(io)?;
                } else {
                    writeln!(out, "oracle: disagree (oracle q_min {expected})").map_err(io)?;
                    return Err(Failure::Inconsistent(format!("q_min {q} but the oracle found {expected}")));
                }
            }
            Ok(true)
        }
    }
}

fn print_parts(out: &mut dyn Write, g: &Graph, h: &PatternGraph, variant: Variant, d: &QDecision) -> Result<(), Failure> {
    if let Some(parts) = &d.certificate {
        verify_partition(g, h, variant, parts).map_err(|e| Failure::Inconsistent(format!("certificate rejected: {e}")))?;
        for (k, part) in parts.iter().enumerate() {
            writeln!(out, "PART {}: {}", k + 1, ids(part)).map_err(io)?;
        }
    }
    Ok(())
}

fn report_oracle(out: &mut dyn Write, answer: bool, oracle: bool) -> Result<(), Failure> {
    if answer == oracle {
        writeln!(out, "oracle: agree").map_err(io)?;
        Ok(())
    } else {
        writeln!(out, "oracle: disagree (oracle {})", yes_no(oracle)).map_err(io)?;
        Err(Failure::Inconsistent(format!(
            "solver answered {} but the oracle answered {}",
            yes_no(answer),
            yes_no(oracle)
        )))
    }
}

fn oracle_min_q(g: &Graph, h: &PatternGraph, variant: Variant, budget: &OracleBudget) -> Result<usize, Failure> {
    for q in 1..=g.n().max(1) {
        if oracle_qpartition(g, h, variant, q, budget)?.feasible {
            return Ok(q);
        }
    }
    unreachable!("singletons are always H-free")
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}
