//! Containment tests against a naive oracle that tries every injective
//! labelling of the pattern.

use hbip_core::graph::{has_induced_subgraph, has_subgraph, is_part_valid};
use hbip_core::{generate, Graph, PatternGraph, Variant};

fn naive(g: &Graph, h: &PatternGraph, induced: bool) -> bool {
    fn place(g: &Graph, h: &PatternGraph, induced: bool, image: &mut Vec<usize>) -> bool {
        let l = image.len();
        if l == h.order() {
            return true;
        }
        for v in 0..g.n() {
            if image.contains(&v) {
                continue;
            }
            let fits = (0..l).all(|a| {
                let (in_h, in_g) = (h.has_edge(a, l), g.has_edge(image[a], v));
                if induced {
                    in_h == in_g
                } else {
                    !in_h || in_g
                }
            });
            if fits {
                image.push(v);
                if place(g, h, induced, image) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    place(g, h, induced, &mut Vec::new())
}

fn patterns() -> Vec<PatternGraph> {
    vec![
        PatternGraph::complete(3).unwrap(),
        PatternGraph::path(3).unwrap(),
        PatternGraph::path(4).unwrap(),
        PatternGraph::cycle(4).unwrap(),
    ]
}

fn check(g: &Graph) {
    for h in patterns() {
        let sub = has_subgraph(g, &h);
        let ind = has_induced_subgraph(g, &h);
        assert_eq!(sub, naive(g, &h, false), "{g:?} {h:?}");
        assert_eq!(ind, naive(g, &h, true), "{g:?} {h:?} induced");
        assert!(!ind || sub);
    }
}

#[test]
fn every_graph_up_to_six_vertices() {
    for n in 0..=6usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0..1u64 << pairs {
            check(&generate::from_pair_mask(n, mask));
        }
    }
}

#[test]
fn random_graphs_on_seven_vertices() {
    for seed in 0..3000 {
        check(&generate::gnp(7, [0.2, 0.4, 0.6, 0.8][(seed % 4) as usize], seed));
    }
}

#[test]
fn deleting_vertices_never_creates_containment() {
    for seed in 0..300u64 {
        let g = generate::gnp(8, 0.4, 10_000 + seed);
        for h in patterns() {
            for variant in [Variant::Subgraph, Variant::Induced] {
                let keep: Vec<usize> = (0..8).filter(|v| (seed >> (v % 6)) & 1 == 0 || v % 3 == 0).collect();
                let sub = g.induced(&keep).unwrap().graph;
                let whole = !is_part_valid(&g, &(0..8).collect::<Vec<_>>(), &h, variant).unwrap();
                let part = !is_part_valid(&g, &keep, &h, variant).unwrap();
                assert_eq!(part, match variant {
                    Variant::Subgraph => has_subgraph(&sub, &h),
                    Variant::Induced => has_induced_subgraph(&sub, &h),
                });
                assert!(!part || whole);
            }
        }
    }
}

#[test]
fn k2_containment_means_an_edge() {
    let k2 = PatternGraph::complete(2).unwrap();
    for seed in 0..200 {
        let g = generate::gnp(6, 0.15, seed);
        assert_eq!(has_subgraph(&g, &k2), g.edge_count() > 0);
    }
}
