use super::{validate, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    /// Sorted bag.
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
    /// Zero, one or two children depending on `kind`; always smaller indices.
    pub children: Vec<usize>,
}

/// A rooted nice tree decomposition whose nodes are stored children-first,
/// so a forward scan over [`NiceTreeDecomposition::nodes`] is a valid bottom-up order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    n: usize,
    width: usize,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of graph vertices the decomposition was built for.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The node-count ceiling checked for decompositions built by [`make_nice`].
    pub fn node_bound(n: usize, input_nodes: usize) -> usize {
        8 * (n + input_nodes) + 4
    }

    /// Height of every node (leaves are 0).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            h[i] = node.children.iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Drops the node kinds and returns the underlying tree decomposition.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|nd| nd.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, nd)| nd.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition::new(bags, edges)
    }

    /// Checks every node against the bag relation required by its kind,
    /// plus empty root and leaf bags. Returns the first problem found.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let Some(root) = self.nodes.last() else {
            return Err("no nodes".into());
        };
        if !root.bag.is_empty() {
            return Err("root bag is not empty".into());
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            let want = match node.kind {
                NodeKind::Leaf => 0,
                NodeKind::Introduce(_) | NodeKind::Forget(_) => 1,
                NodeKind::Join => 2,
            };
            if node.children.len() != want {
                return Err(format!("node {i} ({:?}) has {} children", node.kind, node.children.len()));
            }
            for &c in &node.children {
                if c >= i {
                    return Err(format!("node {i} has child {c} stored after it"));
                }
                parents[c] += 1;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NodeKind::Leaf => node.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    !child_bag(0).contains(&v) && with(child_bag(0), v) == node.bag
                }
                NodeKind::Forget(v) => !node.bag.contains(&v) && with(&node.bag, v) == *child_bag(0),
                NodeKind::Join => *child_bag(0) == node.bag && *child_bag(1) == node.bag,
            };
            if !ok {
                return Err(format!("node {i} ({:?}) violates its bag relation", node.kind));
            }
        }
        let last = self.nodes.len() - 1;
        if let Some(i) = (0..last).find(|&i| parents[i] != 1) {
            return Err(format!("node {i} has {} parents", parents[i]));
        }
        Ok(())
    }
}

fn with(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut out = bag.to_vec();
    let at = out.binary_search(&v).unwrap_or_else(|e| e);
    out.insert(at, v);
    out
}

fn subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<Vertex>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { bag, kind, children });
        self.nodes.len() - 1
    }

    /// Walks from the node `top` (with bag `from`) to a node with bag `to`:
    /// forgets first, then introduces.
    fn transition(&mut self, mut top: usize, to: &[Vertex]) -> usize {
        let from = self.nodes[top].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&w| w != v);
            top = self.push(bag.clone(), NodeKind::Forget(v), vec![top]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            bag = with(&bag, v);
            top = self.push(bag.clone(), NodeKind::Introduce(v), vec![top]);
        }
        top
    }

    /// Balanced binary join tree over subtrees that all end in the same bag.
    fn join_all(&mut self, mut tops: Vec<usize>) -> usize {
        while tops.len() > 1 {
            let mut next = Vec::with_capacity(tops.len().div_ceil(2));
            for pair in tops.chunks(2) {
                if let [a, b] = *pair {
                    let bag = self.nodes[a].bag.clone();
                    next.push(self.push(bag, NodeKind::Join, vec![a, b]));
                } else {
                    next.push(pair[0]);
                }
            }
            tops = next;
        }
        tops[0]
    }
}

/// Converts a valid tree decomposition of `g` into nice form with empty root and leaf bags.
///
/// Adjacent bags where one contains the other are contracted first; this
/// keeps the width and only removes redundant nodes.
pub fn make_nice(g: &Graph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let report = validate(g, td);
    if !report.is_valid() {
        return Err(Error::InvalidDecomposition(report));
    }
    let (bags, children, root) = contract(td);

    let mut builder = Builder {
        nodes: Vec::with_capacity(4 * (g.n() + bags.len()) + 4),
    };
    let mut top = vec![usize::MAX; bags.len()];
    // Iterative post-order over the contracted tree.
    let mut stack = vec![(root, false)];
    while let Some((t, expanded)) = stack.pop() {
        if !expanded {
            stack.push((t, true));
            stack.extend(children[t].iter().map(|&c| (c, false)));
            continue;
        }
        let node = if children[t].is_empty() {
            let leaf = builder.push(Vec::new(), NodeKind::Leaf, Vec::new());
            builder.transition(leaf, &bags[t])
        } else {
            let branches: Vec<usize> = children[t]
                .iter()
                .map(|&c| builder.transition(top[c], &bags[t]))
                .collect();
            builder.join_all(branches)
        };
        top[t] = node;
    }
    builder.transition(top[root], &[]);

    let width = builder.nodes.iter().map(|nd| nd.bag.len()).max().unwrap_or(0).saturating_sub(1);
    let nice = NiceTreeDecomposition {
        nodes: builder.nodes,
        n: g.n(),
        width,
    };
    debug_assert_eq!(nice.check_structure(), Ok(()));
    Ok(nice)
}

/// Roots the tree at node 0 and contracts every edge whose bags are nested.
fn contract(td: &TreeDecomposition) -> (Vec<Vec<Vertex>>, Vec<Vec<usize>>, usize) {
    let adj = td.tree_adjacency();
    let count = td.len();
    let mut parent = vec![usize::MAX; count];
    let mut order = Vec::with_capacity(count);
    let mut seen = vec![false; count];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        head += 1;
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                parent[b] = a;
                order.push(b);
            }
        }
    }

    let mut bags: Vec<Vec<Vertex>> = td.bags().to_vec();
    let mut alive = vec![true; count];
    // `rep[i]` is the surviving node that absorbed `i`.
    let mut rep: Vec<usize> = (0..count).collect();
    for &c in order.iter().skip(1).rev() {
        let p = parent[c];
        if subset(&bags[c], &bags[p]) {
            alive[c] = false;
            rep[c] = p;
        } else if subset(&bags[p], &bags[c]) {
            bags[p] = std::mem::take(&mut bags[c]);
            alive[c] = false;
            rep[c] = p;
        }
    }
    let find = |mut i: usize| {
        while rep[i] != i {
            i = rep[i];
        }
        i
    };
    let mut children = vec![Vec::new(); count];
    for &c in order.iter().skip(1) {
        if alive[c] {
            children[find(parent[c])].push(c);
        }
    }
    (bags, children, 0)
}
