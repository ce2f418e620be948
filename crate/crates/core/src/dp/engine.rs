//! Forward (reachable-state) dynamic programming over a nice tree decomposition,
//! shared by all engines.
//!
//! A state assigns every bag vertex to one of `q` parts and carries one
//! auxiliary value per part. Parts never interact: introducing, forgetting and
//! joining only touch the part that holds the vertex (or each part separately),
//! so an engine is fully described by its [`PartRules`].

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::decomposition::{NiceTreeDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Per-part transition rules of an engine. `None` discards the state.
pub trait PartRules: Sync {
    type Aux: Clone + Ord + Hash + Send + Sync + Debug;

    /// Auxiliary value of a part at a leaf (no vertices seen).
    fn leaf(&self) -> Self::Aux;

    /// `v` joins a part whose bag vertices (including `v`) are `side`.
    fn introduce(&self, side: &[Vertex], v: Vertex, aux: &Self::Aux) -> Option<Self::Aux>;

    /// `v` leaves the bag; `side` is what remains of its part.
    fn forget(&self, side: &[Vertex], v: Vertex, aux: &Self::Aux) -> Option<Self::Aux>;

    /// Combines the same part coming from both children of a join.
    fn join(&self, side: &[Vertex], left: &Self::Aux, right: &Self::Aux) -> Option<Self::Aux>;
}

/// How part labels are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartLabels {
    /// Part `k` is a fixed, named part (the `A`/`B` of a bipartition).
    Fixed,
    /// Parts are interchangeable; states are stored in a canonical relabelling.
    Canonical,
}

/// A table entry: bag position `i` belongs to part `parts[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionState<X> {
    pub parts: Vec<u8>,
    pub aux: Vec<X>,
}

impl<X> PartitionState<X> {
    /// Bag vertices assigned to part `p`.
    pub fn side(&self, bag: &[Vertex], p: usize) -> Vec<Vertex> {
        side_of(bag, &self.parts, p)
    }
}

fn side_of(bag: &[Vertex], parts: &[u8], p: usize) -> Vec<Vertex> {
    bag.iter()
        .zip(parts)
        .filter(|(_, &l)| l as usize == p)
        .map(|(&v, _)| v)
        .collect()
}

#[derive(Clone, Debug)]
enum Pred {
    Leaf,
    Unary {
        child: u32,
        relabel: Option<Box<[u8]>>,
    },
    Join {
        left: u32,
        right: u32,
        left_relabel: Option<Box<[u8]>>,
        right_relabel: Option<Box<[u8]>>,
    },
}

#[derive(Clone, Debug)]
struct Table<X> {
    states: Vec<PartitionState<X>>,
    preds: Vec<Pred>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub peak_states: usize,
    pub total_states: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub parts: usize,
    pub labels: PartLabels,
    /// Keep every node's table (needed for certificates and inspection).
    pub keep_tables: bool,
    pub threads: usize,
}

/// The outcome of one DP pass.
pub struct EngineRun<'a, X> {
    nice: &'a NiceTreeDecomposition,
    parts: usize,
    tables: Vec<Option<Table<X>>>,
    feasible: bool,
    stats: Stats,
}

impl<X: Clone> EngineRun<'_, X> {
    /// Whether the root kept at least one state.
    pub fn feasible(&self) -> bool {
        self.feasible
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// The surviving states of `node`, if its table was kept.
    pub fn states(&self, node: usize) -> Option<&[PartitionState<X>]> {
        self.tables.get(node)?.as_ref().map(|t| t.states.as_slice())
    }

    /// Replays stored predecessor choices from the first root state and
    /// returns the vertices of each part (by part label at the root).
    pub fn extract_certificate(&self) -> Result<Vec<Vec<Vertex>>> {
        if !self.feasible {
            return Err(Error::NoSolution);
        }
        let root = self.nice.root();
        if self.tables.iter().any(|t| t.is_none()) {
            return Err(Error::CertificateUnavailable);
        }
        let mut assignment: Vec<Option<u8>> = vec![None; self.nice.vertex_count()];
        let identity: Vec<u8> = (0..self.parts as u8).collect();
        let mut stack: Vec<(usize, usize, Vec<u8>)> = vec![(root, 0, identity)];
        let table = |i: usize| self.tables[i].as_ref().expect("tables kept");
        let compose = |map: &[u8], relabel: &Option<Box<[u8]>>| -> Vec<u8> {
            match relabel {
                None => map.to_vec(),
                Some(r) => r.iter().map(|&to| map[to as usize]).collect(),
            }
        };
        while let Some((node, idx, map)) = stack.pop() {
            let nd = self.nice.node(node);
            match (&table(node).preds[idx], nd.kind) {
                (Pred::Leaf, _) => {}
                (Pred::Unary { child, relabel }, kind) => {
                    let child_node = nd.children[0];
                    let child_map = compose(&map, relabel);
                    if let NodeKind::Forget(v) = kind {
                        let child_bag = &self.nice.node(child_node).bag;
                        let pos = child_bag.binary_search(&v).expect("forgotten vertex in child bag");
                        let label = table(child_node).states[*child as usize].parts[pos];
                        assignment[v] = Some(child_map[label as usize]);
                    }
                    stack.push((child_node, *child as usize, child_map));
                }
                (
                    Pred::Join {
                        left,
                        right,
                        left_relabel,
                        right_relabel,
                    },
                    _,
                ) => {
                    stack.push((nd.children[0], *left as usize, compose(&map, left_relabel)));
                    stack.push((nd.children[1], *right as usize, compose(&map, right_relabel)));
                }
            }
        }
        let mut out = vec![Vec::new(); self.parts];
        for (v, label) in assignment.into_iter().enumerate() {
            let label = label.ok_or(Error::CertificateUnavailable)?;
            out[label as usize].push(v);
        }
        Ok(out)
    }
}

/// Runs the DP bottom-up. Nodes of equal height are independent and are
/// processed in parallel when `threads > 1`; the result does not depend on it.
pub fn run<'a, R: PartRules>(
    rules: &R,
    nice: &'a NiceTreeDecomposition,
    options: RunOptions,
) -> Result<EngineRun<'a, R::Aux>> {
    if options.parts == 0 {
        return Err(Error::ZeroParts);
    }
    assert!(options.parts <= u8::MAX as usize, "too many parts");
    let start = Instant::now();
    let heights = nice.heights();
    let max_height = heights.iter().copied().max().unwrap_or(0);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); max_height + 1];
    for (i, &h) in heights.iter().enumerate() {
        levels[h].push(i);
    }

    let pool = if options.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .expect("thread pool"),
        )
    } else {
        None
    };

    let ctx = Context {
        rules,
        nice,
        parts: options.parts,
        labels: options.labels,
    };
    let mut tables: Vec<Option<Table<R::Aux>>> = (0..nice.len()).map(|_| None).collect();
    let mut stats = Stats {
        nodes: nice.len(),
        ..Stats::default()
    };
    let mut dead = false;
    for level in &levels {
        let computed: Vec<(usize, Table<R::Aux>)> = match &pool {
            Some(pool) => pool.install(|| {
                level
                    .par_iter()
                    .map(|&i| (i, ctx.compute(i, &tables)))
                    .collect()
            }),
            None => level.iter().map(|&i| (i, ctx.compute(i, &tables))).collect(),
        };
        for (i, table) in computed {
            stats.peak_states = stats.peak_states.max(table.states.len());
            stats.total_states += table.states.len();
            dead |= table.states.is_empty();
            tables[i] = Some(table);
            if !options.keep_tables {
                for &c in &nice.node(i).children {
                    tables[c] = None;
                }
            }
        }
        // Every later table is empty too; finish only when tables are inspected.
        if dead && !options.keep_tables {
            break;
        }
    }
    let feasible = !dead
        && tables[nice.root()]
            .as_ref()
            .is_some_and(|t| !t.states.is_empty());
    stats.elapsed = start.elapsed();
    Ok(EngineRun {
        nice,
        parts: options.parts,
        tables,
        feasible,
        stats,
    })
}

struct Context<'r, R> {
    rules: &'r R,
    nice: &'r NiceTreeDecomposition,
    parts: usize,
    labels: PartLabels,
}

type Relabel = Option<Box<[u8]>>;

impl<R: PartRules> Context<'_, R> {
    fn compute(&self, i: usize, tables: &[Option<Table<R::Aux>>]) -> Table<R::Aux> {
        let node = self.nice.node(i);
        let child = |k: usize| tables[node.children[k]].as_ref().expect("child table computed");
        let mut found: HashMap<PartitionState<R::Aux>, Pred> = HashMap::new();
        match node.kind {
            NodeKind::Leaf => {
                let state = PartitionState {
                    parts: Vec::new(),
                    aux: vec![self.rules.leaf(); self.parts],
                };
                found.insert(state, Pred::Leaf);
            }
            NodeKind::Introduce(v) => {
                let pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                for (k, state) in child(0).states.iter().enumerate() {
                    for p in 0..self.parts {
                        let mut parts = state.parts.clone();
                        parts.insert(pos, p as u8);
                        let side = side_of(&node.bag, &parts, p);
                        let Some(aux_p) = self.rules.introduce(&side, v, &state.aux[p]) else {
                            continue;
                        };
                        let mut aux = state.aux.clone();
                        aux[p] = aux_p;
                        let (next, relabel) = self.finish(parts, aux);
                        found.entry(next).or_insert(Pred::Unary {
                            child: k as u32,
                            relabel,
                        });
                    }
                }
            }
            NodeKind::Forget(v) => {
                let child_bag = &self.nice.node(node.children[0]).bag;
                let pos = child_bag.binary_search(&v).expect("forgotten vertex in child bag");
                for (k, state) in child(0).states.iter().enumerate() {
                    let p = state.parts[pos] as usize;
                    let mut parts = state.parts.clone();
                    parts.remove(pos);
                    let side = side_of(&node.bag, &parts, p);
                    let Some(aux_p) = self.rules.forget(&side, v, &state.aux[p]) else {
                        continue;
                    };
                    let mut aux = state.aux.clone();
                    aux[p] = aux_p;
                    let (next, relabel) = self.finish(parts, aux);
                    found.entry(next).or_insert(Pred::Unary {
                        child: k as u32,
                        relabel,
                    });
                }
            }
            NodeKind::Join => self.join(&node.bag, child(0), child(1), &mut found),
        }
        let mut entries: Vec<(PartitionState<R::Aux>, Pred)> = found.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let (states, preds) = entries.into_iter().unzip();
        Table { states, preds }
    }

    fn finish(&self, parts: Vec<u8>, aux: Vec<R::Aux>) -> (PartitionState<R::Aux>, Relabel) {
        match self.labels {
            PartLabels::Fixed => (PartitionState { parts, aux }, None),
            PartLabels::Canonical => {
                let (state, perm) = canonicalize(parts, aux);
                (state, Some(perm.into_boxed_slice()))
            }
        }
    }

    fn join(
        &self,
        bag: &[Vertex],
        left: &Table<R::Aux>,
        right: &Table<R::Aux>,
        found: &mut HashMap<PartitionState<R::Aux>, Pred>,
    ) {
        let mut by_parts: HashMap<&[u8], Vec<usize>> = HashMap::new();
        for (k, s) in right.states.iter().enumerate() {
            by_parts.entry(s.parts.as_slice()).or_default().push(k);
        }
        let sides: Vec<Vec<Vertex>> = (0..self.parts).map(|_| Vec::new()).collect();
        for (a, ls) in left.states.iter().enumerate() {
            let Some(matches) = by_parts.get(ls.parts.as_slice()) else {
                continue;
            };
            let mut sides = sides.clone();
            for (&v, &l) in bag.iter().zip(&ls.parts) {
                sides[l as usize].push(v);
            }
            for &b in matches {
                let rs = &right.states[b];
                match self.labels {
                    PartLabels::Fixed => {
                        let identity: Vec<usize> = (0..self.parts).collect();
                        if let Some(aux) = self.merge_parts(&sides, ls, rs, &identity) {
                            found
                                .entry(PartitionState {
                                    parts: ls.parts.clone(),
                                    aux,
                                })
                                .or_insert(Pred::Join {
                                    left: a as u32,
                                    right: b as u32,
                                    left_relabel: None,
                                    right_relabel: None,
                                });
                        }
                    }
                    PartLabels::Canonical => {
                        for sigma in empty_part_matchings(ls, rs, self.parts) {
                            let Some(aux) = self.merge_parts(&sides, ls, rs, &sigma) else {
                                continue;
                            };
                            let (state, perm) = canonicalize(ls.parts.clone(), aux);
                            let right_perm: Vec<u8> = sigma.iter().map(|&l| perm[l]).collect();
                            found.entry(state).or_insert(Pred::Join {
                                left: a as u32,
                                right: b as u32,
                                left_relabel: Some(perm.into_boxed_slice()),
                                right_relabel: Some(right_perm.into_boxed_slice()),
                            });
                        }
                    }
                }
            }
        }
    }

    /// Merges part `p` of the left state with part `p'` of the right state,
    /// where `sigma[p'] = p`.
    fn merge_parts(
        &self,
        sides: &[Vec<Vertex>],
        ls: &PartitionState<R::Aux>,
        rs: &PartitionState<R::Aux>,
        sigma: &[usize],
    ) -> Option<Vec<R::Aux>> {
        let mut inverse = vec![0usize; self.parts];
        for (rp, &lp) in sigma.iter().enumerate() {
            inverse[lp] = rp;
        }
        (0..self.parts)
            .map(|p| self.rules.join(&sides[p], &ls.aux[p], &rs.aux[inverse[p]]))
            .collect()
    }
}

/// Relabels parts: labels used in the bag come first, by first bag position;
/// unused labels follow, ordered by their auxiliary value. Returns the new
/// state and `perm[old] = new`.
fn canonicalize<X: Ord + Clone>(parts: Vec<u8>, aux: Vec<X>) -> (PartitionState<X>, Vec<u8>) {
    let q = aux.len();
    let mut perm = vec![u8::MAX; q];
    let mut next = 0u8;
    for &l in &parts {
        if perm[l as usize] == u8::MAX {
            perm[l as usize] = next;
            next += 1;
        }
    }
    let mut unused: Vec<usize> = (0..q).filter(|&l| perm[l] == u8::MAX).collect();
    unused.sort_by(|&a, &b| aux[a].cmp(&aux[b]).then(a.cmp(&b)));
    for l in unused {
        perm[l] = next;
        next += 1;
    }
    let parts = parts.iter().map(|&l| perm[l as usize]).collect();
    let mut slots: Vec<Option<X>> = vec![None; q];
    for (old, x) in aux.into_iter().enumerate() {
        slots[perm[old] as usize] = Some(x);
    }
    let aux = slots.into_iter().map(|x| x.expect("perm is a bijection")).collect();
    (PartitionState { parts, aux }, perm)
}

/// All ways of matching the right state's bag-empty parts to the left
/// state's, up to swapping right parts with equal auxiliary values.
/// Each result maps right label to left label.
fn empty_part_matchings<X: Ord>(ls: &PartitionState<X>, rs: &PartitionState<X>, q: usize) -> Vec<Vec<usize>> {
    let used = ls.parts.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let right_empty: Vec<usize> = (used..q).collect();
    // Class id per right empty part; canonical order keeps equal values adjacent.
    let mut classes = Vec::with_capacity(right_empty.len());
    for (i, &rp) in right_empty.iter().enumerate() {
        let id = if i > 0 && rs.aux[rp] == rs.aux[right_empty[i - 1]] {
            classes[i - 1]
        } else {
            i
        };
        classes.push(id);
    }
    let mut arrangement = classes.clone();
    let mut out = Vec::new();
    loop {
        // Left slot `used + j` receives a right part of class `arrangement[j]`.
        let mut sigma: Vec<usize> = (0..q).collect();
        let mut taken = vec![false; right_empty.len()];
        for (j, &class) in arrangement.iter().enumerate() {
            let k = (0..right_empty.len())
                .find(|&k| !taken[k] && classes[k] == class)
                .expect("arrangement is a permutation of classes");
            taken[k] = true;
            sigma[right_empty[k]] = used + j;
        }
        out.push(sigma);
        if !next_permutation(&mut arrangement) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
