//! Exhaustive ground truth: tries every assignment of vertices to parts,
//! pruning as soon as the vertex just placed completes a copy of `H`.

use crate::dp::Bipartition;
use crate::error::{Error, Result};
use crate::graph::{contains_through, Graph, PatternGraph, Variant, Vertex};
use crate::qchromatic::QDecision;

/// Limits on the instances the oracle accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Cap on the size of the raw assignment space (`2^(n-1)` or `q^n`).
    pub max_assignments: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 14,
            max_assignments: 59_049,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDecision {
    pub answer: bool,
    /// The lexicographically first valid bipartition (vertex 0 in `A`).
    pub certificate: Option<Bipartition>,
}

fn space(base: u64, exponent: usize) -> Option<u64> {
    base.checked_pow(u32::try_from(exponent).ok()?)
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a PatternGraph,
    variant: Variant,
    q: usize,
    parts: Vec<Vec<Vertex>>,
    /// Only allow a new part when every lower part is used (restricted growth).
    symmetric: bool,
}

impl Search<'_> {
    fn run(&mut self, v: Vertex) -> bool {
        if v == self.g.n() {
            return self.symmetric || self.parts.iter().all(|p| !p.is_empty());
        }
        let used = self.parts.iter().take_while(|p| !p.is_empty()).count();
        let limit = if self.symmetric { (used + 1).min(self.q) } else { self.q };
        let first = if v == 0 { 0..1 } else { 0..limit };
        for p in first {
            self.parts[p].push(v);
            let clash = contains_through(self.g, &self.parts[p], v, self.h, self.variant).expect("vertices in range");
            if !clash && self.run(v + 1) {
                return true;
            }
            self.parts[p].pop();
        }
        false
    }
}

/// Decides whether `V(G)` splits into two nonempty `H`-free parts by trying
/// all `2^(n-1)` splits with vertex 0 in `A`, `A` before `B`.
pub fn oracle_bipartition(
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    budget: &OracleBudget,
) -> Result<OracleDecision> {
    let n = g.n();
    if n > budget.max_vertices || space(2, n.saturating_sub(1)).is_none_or(|s| s > budget.max_assignments) {
        return Err(Error::BudgetExceeded(format!(
            "bipartition oracle on {n} vertices exceeds {} vertices / {} assignments",
            budget.max_vertices, budget.max_assignments
        )));
    }
    if n < 2 {
        return Ok(OracleDecision {
            answer: false,
            certificate: None,
        });
    }
    let mut search = Search {
        g,
        h,
        variant,
        q: 2,
        parts: vec![Vec::new(), Vec::new()],
        symmetric: false,
    };
    let answer = search.run(0);
    let certificate = answer.then(|| {
        let mut parts = search.parts;
        let b = parts.pop().expect("two parts");
        let a = parts.pop().expect("two parts");
        Bipartition { a, b }
    });
    Ok(OracleDecision { answer, certificate })
}

/// Decides whether `V(G)` splits into `q` (possibly empty) `H`-free parts,
/// enumerating assignments up to relabelling of the parts.
pub fn oracle_qpartition(
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    q: usize,
    budget: &OracleBudget,
) -> Result<QDecision> {
    if q == 0 {
        return Err(Error::ZeroParts);
    }
    let n = g.n();
    if space(q as u64, n).is_none_or(|s| s > budget.max_assignments) {
        return Err(Error::BudgetExceeded(format!(
            "{q}-partition oracle on {n} vertices exceeds {} assignments",
            budget.max_assignments
        )));
    }
    let mut search = Search {
        g,
        h,
        variant,
        q,
        parts: vec![Vec::new(); q],
        symmetric: true,
    };
    let feasible = search.run(0);
    Ok(QDecision {
        feasible,
        q_min: None,
        certificate: feasible.then_some(search.parts),
    })
}
