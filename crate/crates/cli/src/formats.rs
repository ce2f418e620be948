//! PACE-style text formats with 1-based vertex ids: `.gr` graphs, `.td`
//! decompositions and `.pat` patterns (the `.gr` syntax with a `p pat` header).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hbip_core::{
    validate, Error as CoreError, Graph, PatternGraph, TreeDecomposition, ValidationReport, Vertex, Violation,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && t[0] != "c")
}

fn number(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .or_else(|_| err(line, format!("expected {what}, found `{token}`")))
}

fn vertex(line: usize, token: &str, n: usize) -> Result<Vertex, ParseError> {
    let id = number(line, token, "a vertex id")?;
    if id == 0 || id > n {
        return err(line, format!("vertex id {id} out of range 1..={n}"));
    }
    Ok(id - 1)
}

/// Shared body of `.gr` and `.pat`: header `p <kind> <n> <m>` then `m` edges.
fn parse_edge_list(text: &str, kind: &str) -> Result<(usize, Vec<(Vertex, Vertex)>), ParseError> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return err(1, format!("missing `p {kind}` header"));
    };
    if header.len() != 4 || header[0] != "p" || header[1] != kind {
        return err(hline, format!("expected header `p {kind} <n> <m>`"));
    }
    let n = number(hline, header[2], "a vertex count")?;
    let m = number(hline, header[3], "an edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last = hline;
    for (line, tokens) in lines {
        last = line;
        if tokens.len() != 2 {
            return err(line, "expected an edge `u v`");
        }
        let u = vertex(line, tokens[0], n)?;
        let v = vertex(line, tokens[1], n)?;
        if u == v {
            return err(line, format!("self-loop on vertex {}", u + 1));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return err(line, format!("duplicate edge {} {}", u + 1, v + 1));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return err(last, format!("header declares {m} edges but {} were given", edges.len()));
    }
    Ok((n, edges))
}

pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let (n, edges) = parse_edge_list(text, "tw")?;
    Ok(Graph::from_edges(n, &edges).expect("edges checked while parsing"))
}

pub fn emit_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_pat(text: &str) -> Result<PatternGraph, ParseError> {
    let (r, edges) = parse_edge_list(text, "pat")?;
    PatternGraph::from_edges(r, &edges).or_else(|e| err(1, e.to_string()))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("decomposition is for {declared} vertices but the graph has {actual}")]
    VertexCount { declared: usize, actual: usize },
    #[error("invalid decomposition: {}", one_based(.0))]
    Invalid(ValidationReport),
}

/// The report with vertex and bag ids shifted to the 1-based file convention.
fn one_based(report: &ValidationReport) -> String {
    let items: Vec<String> = report
        .violations
        .iter()
        .map(|v| match v {
            Violation::NotATree(why) => format!("decomposition tree is not a tree: {why}"),
            Violation::VertexOutOfRange { bag, vertex } => format!("bag {} holds unknown vertex {}", bag + 1, vertex + 1),
            Violation::UncoveredVertex(v) => format!("vertex {} is in no bag", v + 1),
            Violation::UncoveredEdge(u, v) => format!("edge {} {} is in no bag", u + 1, v + 1),
            Violation::DisconnectedOccurrence(v) => {
                format!("bags containing vertex {} do not form a connected subtree", v + 1)
            }
        })
        .collect();
    items.join("; ")
}

/// Parses a `.td` file and validates it against `g`.
pub fn parse_td(text: &str, g: &Graph) -> Result<TreeDecomposition, TdError> {
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return Err(ParseError {
            line: 1,
            message: "missing `s td` header".into(),
        }
        .into());
    };
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(ParseError {
            line: hline,
            message: "expected header `s td <bags> <width+1> <n>`".into(),
        }
        .into());
    }
    let count = number(hline, header[2], "a bag count")?;
    let declared_size = number(hline, header[3], "a bag size")?;
    let n = number(hline, header[4], "a vertex count")?;
    if n != g.n() {
        return Err(TdError::VertexCount {
            declared: n,
            actual: g.n(),
        });
    }
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; count];
    let mut edges = Vec::new();
    let mut last = hline;
    for (line, tokens) in lines {
        last = line;
        if tokens[0] == "b" {
            if tokens.len() < 2 {
                return Err(ParseError { line, message: "expected `b <i> <v...>`".into() }.into());
            }
            let i = vertex(line, tokens[1], count).map_err(|_| ParseError {
                line,
                message: format!("bag id `{}` out of range 1..={count}", tokens[1]),
            })?;
            if bags[i].is_some() {
                return Err(ParseError { line, message: format!("bag {} defined twice", i + 1) }.into());
            }
            let vs = tokens[2..].iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>, _>>()?;
            bags[i] = Some(vs);
        } else {
            if tokens.len() != 2 {
                return Err(ParseError { line, message: "expected a tree edge `i j`".into() }.into());
            }
            let a = vertex(line, tokens[0], count)?;
            let b = vertex(line, tokens[1], count)?;
            edges.push((a, b));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or(ParseError {
                line: last,
                message: format!("bag {} is never defined", i + 1),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let td = TreeDecomposition::new(bags, edges);
    let actual_size = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    if actual_size != declared_size {
        return Err(ParseError {
            line: hline,
            message: format!("header declares bag size {declared_size} but the largest bag has {actual_size}"),
        }
        .into());
    }
    let report = validate(g, &td);
    if !report.is_valid() {
        return Err(TdError::Invalid(report));
    }
    Ok(td)
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let size = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {size} {n}\n", td.len());
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// A pattern named on the command line: `K<r>`, `C<r>`, `P<r>`, or a `.pat` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    File(PathBuf),
}

impl PatternSpec {
    pub fn parse(token: &str) -> PatternSpec {
        let mut chars = token.chars();
        let family = chars.next().map(|c| c.to_ascii_uppercase());
        let order = chars.as_str().parse::<usize>().ok();
        match (family, order) {
            (Some('K'), Some(r)) => PatternSpec::Complete(r),
            (Some('C'), Some(r)) => PatternSpec::Cycle(r),
            (Some('P'), Some(r)) => PatternSpec::Path(r),
            _ => PatternSpec::File(PathBuf::from(token)),
        }
    }

    pub fn resolve(&self) -> Result<PatternGraph, String> {
        let named = |r: PatternGraphResult| r.map_err(|e| e.to_string());
        match self {
            PatternSpec::Complete(r) => named(PatternGraph::complete(*r)),
            PatternSpec::Cycle(r) => named(PatternGraph::cycle(*r)),
            PatternSpec::Path(r) => named(PatternGraph::path(*r)),
            PatternSpec::File(path) => {
                let text = read(path)?;
                parse_pat(&text).map_err(|e| format!("{}: {e}", path.display()))
            }
        }
    }
}

type PatternGraphResult = Result<PatternGraph, CoreError>;

pub fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
