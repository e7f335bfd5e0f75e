#![allow(dead_code)]

use liftlab::graph::MultiGraph;
use liftlab::random::random_connected_graph;
use liftlab::voltage::{spanning_tree_voltage, universal_cover_ball, VoltageAssignment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two vertices joined by three parallel edges; its universal cover is T_3.
pub fn theta() -> MultiGraph {
    MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Named vertex-transitive graphs.
pub fn transitive_corpus() -> Vec<(String, MultiGraph)> {
    let mut out = vec![
        ("petersen".to_string(), MultiGraph::petersen().unwrap()),
        ("bouquet2".to_string(), MultiGraph::bouquet(2).unwrap()),
        ("k2".to_string(), MultiGraph::path(2).unwrap()),
    ];
    for n in [3, 4, 5, 8, 13] {
        out.push((format!("c{n}"), MultiGraph::cycle(n).unwrap()));
    }
    for n in [4, 6] {
        out.push((format!("k{n}"), MultiGraph::complete(n).unwrap()));
    }
    for d in [3, 4, 5] {
        out.push((format!("q{d}"), MultiGraph::hypercube(d).unwrap()));
    }
    out
}

/// Small named graphs with less symmetry, including multigraphs.
pub fn irregular_corpus() -> Vec<(String, MultiGraph)> {
    vec![
        ("p3".to_string(), MultiGraph::path(3).unwrap()),
        ("p7".to_string(), MultiGraph::path(7).unwrap()),
        ("star4".to_string(), MultiGraph::star(4).unwrap()),
        ("theta".to_string(), theta()),
        ("loop_path".to_string(), MultiGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap()),
        ("lollipop".to_string(), MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap()),
        ("double_edge_path".to_string(), MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap()),
    ]
}

/// Random connected simple graphs with `lo..=hi` vertices.
pub fn random_corpus(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<MultiGraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(lo..=hi);
            let p = r.random_range(0.1..0.6);
            random_connected_graph(n, p, &mut r).unwrap()
        })
        .collect()
}

/// Adds a few random loops and parallel edges to a connected graph.
pub fn sprinkle_multi_edges(g: &MultiGraph, extra: usize, seed: u64) -> MultiGraph {
    let mut r = rng(seed);
    let mut edges = g.edges();
    let n = g.vertex_count();
    for _ in 0..extra {
        let u = r.random_range(0..n);
        let v = if r.random_bool(0.5) { u } else { r.random_range(0..n) };
        edges.push((u, v));
    }
    MultiGraph::with_degree_bound(n, &edges, 64).unwrap()
}

/// Depth-`radius` ball of the `d`-regular tree, built as the universal
/// cover of a bouquet (`d` even) or of `d` parallel edges.
pub fn regular_tree_ball(d: usize, radius: usize) -> liftlab::graph::RootedBall {
    let base = if d.is_multiple_of(2) {
        MultiGraph::bouquet(d / 2).unwrap()
    } else {
        MultiGraph::from_edges(2, &vec![(0, 1); d]).unwrap()
    };
    universal_cover_ball(&base, 0, radius).unwrap()
}

/// Free voltages on the non-tree edges.
pub fn tree_voltage(h: &MultiGraph) -> VoltageAssignment {
    spanning_tree_voltage(h).unwrap()
}
