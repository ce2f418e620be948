//! Acceptance suite: one line per criterion on stdout, then a single assertion
//! that every criterion passed.

#![allow(clippy::too_many_arguments, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};
use std::io::Write;
use std::time::{Duration, Instant};

use hbip_core::dp::{self, PartLabels, RunOptions, Sequence, Slot};
use hbip_core::graph::find_embedding;
use hbip_core::{
    generate, heuristic_decomposition, heuristic_decomposition_with, make_nice, min_q, oracle_bipartition,
    oracle_qpartition, solve_c4, solve_clique, solve_general, solve_qpartition, validate, verify_bipartition,
    verify_partition, Decision, EliminationRule, EngineChoice, Graph, NiceTreeDecomposition, NodeKind,
    OracleBudget, PatternGraph, SolveOptions, TieBreak, TreeDecomposition, Variant, Vertex,
};

const VARIANTS: [Variant; 2] = [Variant::Subgraph, Variant::Induced];

/// Counters shared by the criteria that aggregate over every suite.
#[derive(Default)]
struct Tally {
    certificates_checked: usize,
    certificate_failures: Vec<String>,
    nice_checked: usize,
    nice_failures: Vec<String>,
}

impl Tally {
    /// Builds a nice decomposition and records whether it meets every structural requirement.
    fn nice(&mut self, g: &Graph, td: &TreeDecomposition) -> NiceTreeDecomposition {
        let nice = make_nice(g, td).expect("suite decompositions are valid");
        self.nice_checked += 1;
        let mut problems = Vec::new();
        if let Err(e) = nice.check_structure() {
            problems.push(e);
        }
        let report = validate(g, &nice.to_tree_decomposition());
        if !report.is_valid() {
            problems.push(format!("invalid: {report}"));
        }
        if !nice.node(nice.root()).bag.is_empty() {
            problems.push("root bag not empty".into());
        }
        if nice.nodes().iter().any(|n| n.kind == NodeKind::Leaf && !n.bag.is_empty()) {
            problems.push("leaf bag not empty".into());
        }
        let width = td.width().unwrap();
        if nice.width() != width {
            problems.push(format!("width {} != input width {width}", nice.width()));
        }
        let bound = NiceTreeDecomposition::node_bound(g.n(), td.len());
        if nice.len() > bound {
            problems.push(format!("{} nodes exceed bound {bound}", nice.len()));
        }
        if !problems.is_empty() {
            self.nice_failures.push(format!("n={} m={}: {}", g.n(), g.edge_count(), problems.join("; ")));
        }
        nice
    }

    fn heuristic(&mut self, g: &Graph) -> NiceTreeDecomposition {
        self.nice(g, &heuristic_decomposition(g))
    }

    fn bipartition(&mut self, g: &Graph, h: &PatternGraph, variant: Variant, d: &Decision, label: &str) {
        if !d.answer {
            return;
        }
        self.certificates_checked += 1;
        let outcome = match &d.certificate {
            None => Err("missing certificate".to_string()),
            Some(c) => verify_bipartition(g, h, variant, &c.a, &c.b).map_err(|e| e.to_string()),
        };
        if let Err(e) = outcome {
            self.certificate_failures.push(format!("{label}: {e}"));
        }
    }

    fn partition(&mut self, g: &Graph, h: &PatternGraph, variant: Variant, parts: Option<&Vec<Vec<Vertex>>>, label: &str) {
        self.certificates_checked += 1;
        let outcome = match parts {
            None => Err("missing certificate".to_string()),
            Some(p) => verify_partition(g, h, variant, p).map_err(|e| e.to_string()),
        };
        if let Err(e) = outcome {
            self.certificate_failures.push(format!("{label}: {e}"));
        }
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(id: u32, name: &str, outcome: &Outcome) {
    let status = if outcome.passed { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {id:>2} [{name}]: {status} ({})", outcome.detail).unwrap();
}

fn cert() -> SolveOptions {
    SolveOptions::with_certificate()
}

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn oracle(g: &Graph, h: &PatternGraph, variant: Variant) -> bool {
    oracle_bipartition(g, h, variant, &budget()).unwrap().answer
}

fn patterns() -> Vec<(&'static str, PatternGraph)> {
    vec![
        ("K3", PatternGraph::complete(3).unwrap()),
        ("P3", PatternGraph::path(3).unwrap()),
        ("P4", PatternGraph::path(4).unwrap()),
        ("C4", PatternGraph::cycle(4).unwrap()),
    ]
}

/// All graphs on 5 vertices plus 300 random graphs on 6..=12 vertices.
fn clique_suite() -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (0..1024u64).map(|m| generate::from_pair_mask(5, m)).collect();
    for i in 0..300u64 {
        let n = 6 + (i % 7) as usize;
        let p = if i % 2 == 0 { 0.3 } else { 0.5 };
        graphs.push(generate::gnp(n, p, 1000 + i));
    }
    graphs
}

/// 100 random graphs per order 6..=9, shared by every pattern and variant.
fn general_suite() -> Vec<Graph> {
    let mut graphs = Vec::new();
    for n in 6..=9usize {
        for i in 0..100u64 {
            let p = [0.25, 0.4, 0.55, 0.7][(i % 4) as usize];
            graphs.push(generate::gnp(n, p, 50_000 + 1000 * n as u64 + i));
        }
    }
    graphs
}

fn criterion_1(tally: &mut Tally, suite: &[Graph]) -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    let mut disagreements = Vec::new();
    for (i, g) in suite.iter().enumerate() {
        let nice = tally.heuristic(g);
        for r in 2..=4 {
            let h = PatternGraph::complete(r).unwrap();
            let d = solve_clique(g, &nice, r, &cert()).unwrap();
            runs += 1;
            if d.answer != oracle(g, &h, Variant::Subgraph) {
                disagreements.push(format!("graph {i} r={r}"));
            }
            tally.bipartition(g, &h, Variant::Subgraph, &d, &format!("c1 graph {i} r={r}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: disagreements.is_empty() && elapsed < Duration::from_secs(120),
        detail: format!(
            "{runs} runs, {} disagreements {:?}, {:.1}s (limit 120s)",
            disagreements.len(),
            disagreements.iter().take(5).collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2(tally: &mut Tally, suite: &[Graph]) -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    let mut disagreements = Vec::new();
    for (i, g) in suite.iter().enumerate() {
        let nice = tally.heuristic(g);
        for (name, h) in patterns() {
            for variant in VARIANTS {
                let d = solve_general(g, &nice, &h, variant, &cert()).unwrap();
                runs += 1;
                if d.answer != oracle(g, &h, variant) {
                    disagreements.push(format!("graph {i} {name} {variant}"));
                }
                tally.bipartition(g, &h, variant, &d, &format!("c2 graph {i} {name} {variant}"));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: disagreements.is_empty() && elapsed < Duration::from_secs(600),
        detail: format!(
            "{runs} runs, {} disagreements {:?}, {:.1}s (limit 600s)",
            disagreements.len(),
            disagreements.iter().take(5).collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_3(tally: &mut Tally, suites: &[&[Graph]]) -> Outcome {
    let c4 = PatternGraph::cycle(4).unwrap();
    let mut comparisons = 0;
    let mut disagreements = Vec::new();
    for (i, g) in suites.iter().flat_map(|s| s.iter()).enumerate() {
        let nice = tally.heuristic(g);
        let fast = solve_c4(g, &nice, &cert()).unwrap();
        let slow = solve_general(g, &nice, &c4, Variant::Subgraph, &cert()).unwrap();
        comparisons += 1;
        if fast.answer != slow.answer {
            disagreements.push(format!("graph {i} C4"));
        }
        tally.bipartition(g, &c4, Variant::Subgraph, &fast, &format!("c3 graph {i} c4 engine"));
        for r in 2..=4 {
            let h = PatternGraph::complete(r).unwrap();
            let clique = solve_clique(g, &nice, r, &cert()).unwrap();
            for variant in VARIANTS {
                let general = solve_general(g, &nice, &h, variant, &cert()).unwrap();
                comparisons += 1;
                if general.answer != clique.answer {
                    disagreements.push(format!("graph {i} K{r} {variant}"));
                }
                tally.bipartition(g, &h, variant, &general, &format!("c3 graph {i} K{r} {variant}"));
            }
        }
    }
    Outcome {
        passed: disagreements.is_empty(),
        detail: format!(
            "{comparisons} comparisons, {} disagreements {:?}",
            disagreements.len(),
            disagreements.iter().take(5).collect::<Vec<_>>()
        ),
    }
}

fn two_colourable(g: &Graph) -> bool {
    let mut colour = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn criterion_4(tally: &mut Tally) -> Outcome {
    let k2 = PatternGraph::complete(2).unwrap();
    let mut disagreements = Vec::new();
    let mut bipartite = 0;
    for i in 0..500u64 {
        let n = 2 + (i % 49) as usize;
        let g = match i % 4 {
            0 => generate::random_tree(n, i),
            1 => generate::random_bipartite_sparse(n, 3, i).0,
            _ => generate::gnp(n, 1.5 / n as f64, i),
        };
        let nice = tally.heuristic(&g);
        let d = solve_clique(&g, &nice, 2, &cert()).unwrap();
        let expected = two_colourable(&g) && g.n() >= 2;
        bipartite += usize::from(expected);
        if d.answer != expected {
            disagreements.push(format!("graph {i} n={n}"));
        }
        tally.bipartition(&g, &k2, Variant::Subgraph, &d, &format!("c4 graph {i}"));
    }
    Outcome {
        passed: disagreements.is_empty(),
        detail: format!(
            "500 graphs ({bipartite} bipartite), {} disagreements {:?}",
            disagreements.len(),
            disagreements.iter().take(5).collect::<Vec<_>>()
        ),
    }
}

/// The decomposition with one redundant leaf bag hung off the first bag.
fn with_redundant_leaf(td: &TreeDecomposition) -> TreeDecomposition {
    let mut bags = td.bags().to_vec();
    let mut edges = td.edges().to_vec();
    let extra: Vec<Vertex> = bags[0].iter().copied().take(1).collect();
    bags.push(extra);
    edges.push((0, bags.len() - 1));
    TreeDecomposition::new(bags, edges)
}

fn criterion_5(tally: &mut Tally) -> Outcome {
    let k3 = PatternGraph::complete(3).unwrap();
    let p3 = PatternGraph::path(3).unwrap();
    let mut mismatches = Vec::new();
    let mut distinct_total = 0;
    for i in 0..50u64 {
        let n = 4 + (i % 9) as usize;
        let g = generate::gnp(n, 0.35, 7_000 + i);
        let min_fill = heuristic_decomposition(&g);
        let decompositions = vec![
            TreeDecomposition::single_bag(n),
            min_fill.clone(),
            heuristic_decomposition_with(&g, EliminationRule::MinDegree, TieBreak::SmallestId),
            heuristic_decomposition_with(&g, EliminationRule::MinFill, TieBreak::Seeded(i)),
            with_redundant_leaf(&min_fill),
        ];
        let distinct: BTreeSet<_> = decompositions.iter().map(|td| format!("{td:?}")).collect();
        distinct_total += distinct.len();
        let mut decisions: Vec<Vec<bool>> = Vec::new();
        for td in &decompositions {
            let nice = tally.nice(&g, td);
            let mut row = vec![
                solve_clique(&g, &nice, 3, &cert()).unwrap().answer,
                solve_c4(&g, &nice, &cert()).unwrap().answer,
            ];
            for variant in VARIANTS {
                let d = solve_general(&g, &nice, &p3, variant, &cert()).unwrap();
                tally.bipartition(&g, &p3, variant, &d, &format!("c5 graph {i} P3 {variant}"));
                row.push(d.answer);
                row.push(solve_general(&g, &nice, &k3, variant, &cert()).unwrap().answer);
            }
            decisions.push(row);
        }
        if decisions.iter().any(|row| row != &decisions[0]) {
            mismatches.push(format!("graph {i}: {decisions:?}"));
        }
    }
    Outcome {
        passed: mismatches.is_empty(),
        detail: format!(
            "50 graphs x 5 decompositions ({distinct_total} distinct), 6 decisions each, {} mismatches {:?}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

fn criterion_6(tally: &mut Tally, suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    // Complete graphs.
    for n in 1..=8usize {
        let g = generate::complete(n);
        let nice = tally.heuristic(&g);
        for r in 2..=4usize {
            let h = PatternGraph::complete(r).unwrap();
            let d = min_q(&g, &nice, &h, Variant::Subgraph, EngineChoice::Auto, &cert()).unwrap();
            let expected = n.div_ceil(r - 1);
            if d.q_min != Some(expected) {
                failures.push(format!("min_q(K{n}, K{r}) = {:?}, expected {expected}", d.q_min));
            }
            tally.partition(&g, &h, Variant::Subgraph, d.certificate.as_ref(), &format!("c6 K{n} K{r}"));
        }
    }
    // Width bound on suite instances.
    let k2 = PatternGraph::complete(2).unwrap();
    let k3 = PatternGraph::complete(3).unwrap();
    let mut bounded = 0;
    for (i, g) in suite.iter().enumerate() {
        let nice = tally.heuristic(g);
        for h in [&k2, &k3] {
            let d = min_q(g, &nice, h, Variant::Subgraph, EngineChoice::Auto, &cert()).unwrap();
            bounded += 1;
            if d.q_min.is_none_or(|q| q > nice.width() + 1) {
                failures.push(format!("suite graph {i}: min_q {:?} > width+1 = {}", d.q_min, nice.width() + 1));
            }
        }
    }
    // Oracle agreement for q <= 3.
    let mut compared = 0;
    for i in 0..80u64 {
        let n = 2 + (i % 8) as usize;
        let g = generate::gnp(n, [0.3, 0.5, 0.7][(i % 3) as usize], 90_000 + i);
        let nice = tally.heuristic(&g);
        for (name, h) in patterns() {
            for variant in VARIANTS {
                for q in 1..=3 {
                    let d = solve_qpartition(&g, &nice, &h, variant, q, EngineChoice::Auto, &cert()).unwrap();
                    let o = oracle_qpartition(&g, &h, variant, q, &budget()).unwrap();
                    compared += 1;
                    if d.feasible != o.feasible {
                        failures.push(format!("graph {i} {name} {variant} q={q}: dp {} oracle {}", d.feasible, o.feasible));
                    }
                    if d.feasible {
                        tally.partition(&g, &h, variant, d.certificate.as_ref(), &format!("c6 graph {i} {name} q={q}"));
                    }
                }
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: format!(
            "24 complete-graph cases, {bounded} width-bound checks, {compared} oracle comparisons, {} failures {:?}",
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    }
}

fn criterion_9() -> Outcome {
    let time = |n: usize| -> (Duration, bool) {
        let (g, td) = generate::partial_ktree(n, 2, 0.8, 2024);
        let nice = make_nice(&g, &td).unwrap();
        let mut best = Duration::MAX;
        let mut answer = false;
        for _ in 0..5 {
            let start = Instant::now();
            answer = solve_clique(&g, &nice, 3, &SolveOptions::default()).unwrap().answer;
            best = best.min(start.elapsed());
        }
        (best, answer)
    };
    let (small, a) = time(10_000);
    let (large, b) = time(20_000);
    let ratio = large.as_secs_f64() / small.as_secs_f64();
    let limit = Duration::from_secs(10);
    Outcome {
        passed: ratio <= 3.0 && small < limit && large < limit,
        detail: format!(
            "n=10000: {:.3}s ({}), n=20000: {:.3}s ({}), ratio {ratio:.2} (limit 3.0)",
            small.as_secs_f64(),
            if a { "yes" } else { "no" },
            large.as_secs_f64(),
            if b { "yes" } else { "no" },
        ),
    }
}

/// Vertices of the subtree below each node.
fn subtree_vertices(nice: &NiceTreeDecomposition) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = Vec::with_capacity(nice.len());
    for node in nice.nodes() {
        let mut set: BTreeSet<Vertex> = node.bag.iter().copied().collect();
        for &c in &node.children {
            set.extend(out[c].iter().copied());
        }
        out.push(set.into_iter().collect());
    }
    out
}

/// Auxiliary data of one part, computed from a complete assignment of the
/// subtree's vertices.
trait AuxOracle {
    type Aux: Ord + Clone + std::fmt::Debug;
    fn aux(&self, g: &Graph, bag_side: &[Vertex], forgotten: &[Vertex]) -> Self::Aux;
}

struct NoAux;

impl AuxOracle for NoAux {
    type Aux = ();
    fn aux(&self, _: &Graph, _: &[Vertex], _: &[Vertex]) {}
}

/// Pairs of bag vertices with exactly one common forgotten neighbour.
struct PairOracle;

impl AuxOracle for PairOracle {
    type Aux = Vec<(Vertex, Vertex)>;
    fn aux(&self, g: &Graph, side: &[Vertex], forgotten: &[Vertex]) -> Self::Aux {
        let mut out = Vec::new();
        for (i, &x) in side.iter().enumerate() {
            for &y in &side[i + 1..] {
                let common = forgotten.iter().filter(|&&z| g.has_edge(x, z) && g.has_edge(y, z)).count();
                if common == 1 {
                    out.push((x.min(y), x.max(y)));
                }
            }
        }
        out.sort();
        out
    }
}

/// Sequences realised by partial embeddings of `H` into the part, straight
/// from the definition: labels map injectively to part vertices, mapped
/// labels respect adjacency, and a label on a forgotten vertex has no
/// `H`-neighbour left unmapped.
struct SequenceOracle {
    h: PatternGraph,
    variant: Variant,
}

impl SequenceOracle {
    fn extend(&self, g: &Graph, side: &[Vertex], part: &[Vertex], image: &mut Vec<Option<Vertex>>, out: &mut BTreeSet<Sequence>) {
        let r = self.h.order();
        let l = image.len();
        if l == r {
            let consistent = (0..r).all(|a| {
                let Some(u) = image[a] else { return true };
                (0..r).all(|b| {
                    let Some(w) = image[b] else {
                        // a label on a forgotten vertex cannot have an unmapped neighbour
                        return side.contains(&u) || !self.h.has_edge(a, b);
                    };
                    if a == b {
                        return true;
                    }
                    match self.variant {
                        Variant::Subgraph => !self.h.has_edge(a, b) || g.has_edge(u, w),
                        Variant::Induced => self.h.has_edge(a, b) == g.has_edge(u, w),
                    }
                })
            });
            if consistent {
                let slots: Vec<Slot> = image
                    .iter()
                    .map(|x| match x {
                        None => Slot::Dc,
                        Some(v) if side.contains(v) => Slot::bag(*v),
                        Some(_) => Slot::Fg,
                    })
                    .collect();
                out.insert(Sequence::new(&slots));
            }
            return;
        }
        image.push(None);
        self.extend(g, side, part, image, out);
        image.pop();
        for &v in part {
            if image.contains(&Some(v)) {
                continue;
            }
            image.push(Some(v));
            self.extend(g, side, part, image, out);
            image.pop();
        }
    }
}

impl AuxOracle for SequenceOracle {
    type Aux = Vec<Sequence>;
    fn aux(&self, g: &Graph, side: &[Vertex], forgotten: &[Vertex]) -> Self::Aux {
        let part: Vec<Vertex> = side.iter().chain(forgotten).copied().collect();
        let mut out = BTreeSet::new();
        self.extend(g, side, &part, &mut Vec::new(), &mut out);
        out.into_iter().collect()
    }
}

/// Canonical relabelling used for interchangeable parts: parts present in the
/// bag by first bag position, then the rest ordered by auxiliary data.
fn canonical<X: Ord + Clone>(parts: &[u8], aux: &[X]) -> (Vec<u8>, Vec<X>) {
    let q = aux.len();
    let mut order: Vec<usize> = Vec::new();
    for &p in parts {
        if !order.contains(&(p as usize)) {
            order.push(p as usize);
        }
    }
    let mut rest: Vec<usize> = (0..q).filter(|p| !order.contains(p)).collect();
    rest.sort_by(|&a, &b| aux[a].cmp(&aux[b]));
    order.extend(rest);
    let mut new_label = vec![0u8; q];
    for (new, &old) in order.iter().enumerate() {
        new_label[old] = new as u8;
    }
    (
        parts.iter().map(|&p| new_label[p as usize]).collect(),
        order.iter().map(|&old| aux[old].clone()).collect(),
    )
}

/// Every state that some valid assignment of the subtree's vertices to `q`
/// parts produces at `node`.
fn expected_states<O: AuxOracle>(
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    nice: &NiceTreeDecomposition,
    subtree: &[Vertex],
    node: usize,
    q: usize,
    labels: PartLabels,
    oracle: &O,
) -> BTreeSet<(Vec<u8>, Vec<O::Aux>)> {
    let bag = &nice.node(node).bag;
    let k = subtree.len();
    let mut out = BTreeSet::new();
    let mut assignment = vec![0usize; k];
    loop {
        let parts: Vec<Vec<Vertex>> = (0..q)
            .map(|p| (0..k).filter(|&i| assignment[i] == p).map(|i| subtree[i]).collect())
            .collect();
        let valid = parts
            .iter()
            .all(|part| find_embedding(g, Some(part), h, variant).unwrap().is_none());
        if valid {
            let bag_parts: Vec<u8> = bag
                .iter()
                .map(|v| assignment[subtree.binary_search(v).unwrap()] as u8)
                .collect();
            let aux: Vec<O::Aux> = parts
                .iter()
                .map(|part| {
                    let side: Vec<Vertex> = part.iter().copied().filter(|v| bag.contains(v)).collect();
                    let forgotten: Vec<Vertex> = part.iter().copied().filter(|v| !bag.contains(v)).collect();
                    oracle.aux(g, &side, &forgotten)
                })
                .collect();
            out.insert(match labels {
                PartLabels::Fixed => (bag_parts, aux),
                PartLabels::Canonical => canonical(&bag_parts, &aux),
            });
        }
        // next assignment in base q
        let mut i = 0;
        while i < k && assignment[i] == q - 1 {
            assignment[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        assignment[i] += 1;
    }
    out
}

fn compare_tables<X: Ord + Clone + std::fmt::Debug, O: AuxOracle<Aux = X>>(
    run: &dp::EngineRun<'_, X>,
    g: &Graph,
    h: &PatternGraph,
    variant: Variant,
    nice: &NiceTreeDecomposition,
    q: usize,
    labels: PartLabels,
    oracle: &O,
) -> Result<usize, String> {
    let subtrees = subtree_vertices(nice);
    let mut nodes = 0;
    for i in 0..nice.len() {
        let expected = expected_states(g, h, variant, nice, &subtrees[i], i, q, labels, oracle);
        let actual: BTreeSet<(Vec<u8>, Vec<X>)> = run
            .states(i)
            .expect("tables kept")
            .iter()
            .map(|s| (s.parts.clone(), s.aux.clone()))
            .collect();
        if actual != expected {
            let missing: Vec<_> = expected.difference(&actual).take(2).collect();
            let extra: Vec<_> = actual.difference(&expected).take(2).collect();
            return Err(format!("node {i} ({:?}): missing {missing:?}, extra {extra:?}", nice.node(i).kind));
        }
        nodes += 1;
    }
    Ok(nodes)
}

fn criterion_10(tally: &mut Tally) -> Outcome {
    let k3 = PatternGraph::complete(3).unwrap();
    let c4 = PatternGraph::cycle(4).unwrap();
    let mut failures = Vec::new();
    let mut nodes = 0;
    let mut checks = 0;
    let keep = |parts, labels| RunOptions {
        parts,
        labels,
        keep_tables: true,
        threads: 1,
    };
    let mut record = |label: String, result: Result<usize, String>| {
        checks += 1;
        match result {
            Ok(k) => nodes += k,
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    };
    for i in 0..200u64 {
        let n = 3 + (i % 5) as usize;
        let g = generate::gnp(n, [0.3, 0.5, 0.7, 0.9][(i % 4) as usize], 123_000 + i);
        let nice = tally.heuristic(&g);
        let fixed = PartLabels::Fixed;

        let run = dp::run_clique(&g, &nice, 3, keep(2, fixed)).unwrap();
        record(format!("graph {i} clique K3"), compare_tables(&run, &g, &k3, Variant::Subgraph, &nice, 2, fixed, &NoAux));

        let run = dp::run_c4(&g, &nice, keep(2, fixed)).unwrap();
        record(format!("graph {i} c4"), compare_tables(&run, &g, &c4, Variant::Subgraph, &nice, 2, fixed, &PairOracle));

        for (name, h) in [("K3", &k3), ("C4", &c4)] {
            for variant in VARIANTS {
                let run = dp::run_general(&g, &nice, h, variant, keep(2, fixed)).unwrap();
                let oracle = SequenceOracle { h: h.clone(), variant };
                record(
                    format!("graph {i} general {name} {variant}"),
                    compare_tables(&run, &g, h, variant, &nice, 2, fixed, &oracle),
                );
            }
        }

        // Interchangeable parts, on the smaller graphs.
        if n <= 6 && i % 2 == 0 {
            let canon = PartLabels::Canonical;
            let run = dp::run_clique(&g, &nice, 3, keep(3, canon)).unwrap();
            record(format!("graph {i} clique q=3"), compare_tables(&run, &g, &k3, Variant::Subgraph, &nice, 3, canon, &NoAux));
            let run = dp::run_c4(&g, &nice, keep(3, canon)).unwrap();
            record(format!("graph {i} c4 q=3"), compare_tables(&run, &g, &c4, Variant::Subgraph, &nice, 3, canon, &PairOracle));
            let run = dp::run_general(&g, &nice, &c4, Variant::Induced, keep(3, canon)).unwrap();
            let oracle = SequenceOracle { h: c4.clone(), variant: Variant::Induced };
            record(
                format!("graph {i} general C4 induced q=3"),
                compare_tables(&run, &g, &c4, Variant::Induced, &nice, 3, canon, &oracle),
            );
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: format!(
            "200 graphs, {checks} runs, {nodes} node tables compared, {} mismatches {:?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let mut tally = Tally::default();
    let clique = clique_suite();
    let general = general_suite();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let mut run = |id: u32, name: &'static str, f: &mut dyn FnMut(&mut Tally) -> Outcome, tally: &mut Tally| {
        let outcome = f(tally);
        report(id, name, &outcome);
        results.push((id, name, outcome));
    };
    run(1, "clique engine vs oracle", &mut |t| criterion_1(t, &clique), &mut tally);
    run(2, "general engine vs oracle", &mut |t| criterion_2(t, &general), &mut tally);
    run(3, "engine cross-agreement", &mut |t| criterion_3(t, &[&clique, &general]), &mut tally);
    run(4, "K2 reduction vs 2-colouring", &mut criterion_4, &mut tally);
    run(5, "decomposition invariance", &mut criterion_5, &mut tally);
    run(6, "q-colouring", &mut |t| criterion_6(t, &clique[..200]), &mut tally);
    run(9, "linear scaling", &mut |_| criterion_9(), &mut tally);
    run(10, "exhaustive state check", &mut criterion_10, &mut tally);

    let certificates = Outcome {
        passed: tally.certificate_failures.is_empty() && tally.certificates_checked > 0,
        detail: format!(
            "{} certificates verified, {} failures {:?}",
            tally.certificates_checked,
            tally.certificate_failures.len(),
            tally.certificate_failures.iter().take(3).collect::<Vec<_>>()
        ),
    };
    report(7, "certificates verify", &certificates);
    results.push((7, "certificates verify", certificates));
    let nice = Outcome {
        passed: tally.nice_failures.is_empty() && tally.nice_checked > 0,
        detail: format!(
            "{} nice decompositions checked, {} failures {:?}",
            tally.nice_checked,
            tally.nice_failures.len(),
            tally.nice_failures.iter().take(3).collect::<Vec<_>>()
        ),
    };
    report(8, "nice decomposition invariants", &nice);
    results.push((8, "nice decomposition invariants", nice));

    let failed: Vec<String> = results
        .iter()
        .filter(|(_, _, o)| !o.passed)
        .map(|(id, name, o)| format!("{id} [{name}]: {}", o.detail))
        .collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
