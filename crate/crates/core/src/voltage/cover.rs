use std::collections::HashMap;

use super::assignment::VoltageAssignment;
use super::word::{append_reduced, Word};
use crate::error::{Error, Result};
use crate::graph::{HalfEdge, MultiGraph, RootedBall};

/// Default bound on the number of materialized cover vertices.
pub const DEFAULT_COVER_VERTEX_CAP: usize = 5_000_000;

/// A ball of the derived cover, with the reduced word of each vertex.
/// `ball.origin` holds each vertex's image in the base graph.
#[derive(Debug, Clone)]
pub struct CoverBall {
    pub ball: RootedBall,
    pub words: Vec<Word>,
}

/// Radius-`radius` ball around `(base_vertex, e)` in the cover of `h`
/// determined by `phi`.
///
/// Cover vertices are pairs (base vertex, reduced word); the half-edge `h`
/// moves `(v, w)` to `(head h, w · volt h)`. The component of
/// `(base_vertex, e)` is the quotient of the universal cover by the kernel
/// of the induced map on closed walks.
pub fn cover_ball(h: &MultiGraph, phi: &VoltageAssignment, base_vertex: usize, radius: usize) -> Result<CoverBall> {
    cover_ball_capped(h, phi, base_vertex, radius, DEFAULT_COVER_VERTEX_CAP)
}

pub fn cover_ball_capped(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    base_vertex: usize,
    radius: usize,
    cap: usize,
) -> Result<CoverBall> {
    h.require_vertex(base_vertex)?;
    h.require_connected()?;
    phi.check_base(h)?;

    type State = (usize, Box<[i32]>);
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut states: Vec<State> = Vec::new();
    let mut dist: Vec<usize> = Vec::new();
    let root: State = (base_vertex, Box::from([]));
    index.insert(root.clone(), 0);
    states.push(root);
    dist.push(0);

    let step = |state: &State, he: usize| -> State {
        let mut w = state.1.to_vec();
        append_reduced(&mut w, phi.volt(he).letters());
        (h.head(he), w.into_boxed_slice())
    };

    let mut cursor = 0;
    while cursor < states.len() {
        if dist[cursor] < radius {
            let d = dist[cursor] + 1;
            let here = states[cursor].clone();
            for &he in h.out_half_edges(here.0) {
                let next = step(&here, he);
                if !index.contains_key(&next) {
                    if states.len() >= cap {
                        return Err(Error::SizeCap { what: "cover ball vertices", size: cap + 1, cap });
                    }
                    index.insert(next.clone(), states.len());
                    states.push(next);
                    dist.push(d);
                }
            }
        }
        cursor += 1;
    }

    let mut half_edges = Vec::new();
    for (s, state) in states.iter().enumerate() {
        for &he in h.out_half_edges(state.0) {
            if he % 2 != 0 {
                continue;
            }
            if let Some(&t) = index.get(&step(state, he)) {
                half_edges.push(HalfEdge { tail: s, head: t });
                half_edges.push(HalfEdge { tail: t, head: s });
            }
        }
    }
    let graph = MultiGraph::from_half_edges(states.len(), half_edges, h.degree_bound())?;
    let ambient_degree = states.iter().map(|s| h.degree(s.0)).collect();
    let origin: Vec<usize> = states.iter().map(|s| s.0).collect();
    let words =
        states.iter().map(|s| Word::from_letters(phi.rank(), &s.1).expect("cover words stay within rank")).collect();
    let ball = RootedBall::new(graph, 0, radius, ambient_degree, dist, origin);
    Ok(CoverBall { ball, words })
}

/// Radius-`radius` ball of the universal cover of `h`, built from
/// non-backtracking walks out of `base_vertex` (a walk never follows a
/// half-edge by its reverse). The result is always a tree.
pub fn universal_cover_ball(h: &MultiGraph, base_vertex: usize, radius: usize) -> Result<RootedBall> {
    universal_cover_ball_capped(h, base_vertex, radius, DEFAULT_COVER_VERTEX_CAP)
}

pub fn universal_cover_ball_capped(
    h: &MultiGraph,
    base_vertex: usize,
    radius: usize,
    cap: usize,
) -> Result<RootedBall> {
    h.require_vertex(base_vertex)?;
    h.require_connected()?;
    // (base vertex, half-edge used to arrive)
    let mut nodes: Vec<(usize, Option<usize>)> = vec![(base_vertex, None)];
    let mut dist = vec![0usize];
    let mut half_edges = Vec::new();
    let mut cursor = 0;
    while cursor < nodes.len() {
        if dist[cursor] < radius {
            let (v, arrived) = nodes[cursor];
            for &he in h.out_half_edges(v) {
                if arrived == Some(MultiGraph::inv(he)) {
                    continue;
                }
                if nodes.len() >= cap {
                    return Err(Error::SizeCap { what: "cover ball vertices", size: cap + 1, cap });
                }
                let child = nodes.len();
                nodes.push((h.head(he), Some(he)));
                dist.push(dist[cursor] + 1);
                half_edges.push(HalfEdge { tail: cursor, head: child });
                half_edges.push(HalfEdge { tail: child, head: cursor });
            }
        }
        cursor += 1;
    }
    let graph = MultiGraph::from_half_edges(nodes.len(), half_edges, h.degree_bound())?;
    let ambient_degree = nodes.iter().map(|&(v, _)| h.degree(v)).collect();
    let origin = nodes.iter().map(|&(v, _)| v).collect();
    Ok(RootedBall::new(graph, 0, radius, ambient_degree, dist, origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rooted_isomorphic;
    use crate::voltage::spanning_tree_voltage;

    #[test]
    fn bouquet_cover_is_four_regular_tree() {
        let b = MultiGraph::bouquet(2).unwrap();
        let phi = spanning_tree_voltage(&b).unwrap();
        let cb = cover_ball(&b, &phi, 0, 2).unwrap();
        assert_eq!(cb.ball.vertex_count(), 17);
        assert_eq!(cb.ball.graph.edge_count(), 16);
        let u = universal_cover_ball(&b, 0, 2).unwrap();
        assert_eq!(u.vertex_count(), 17);
        assert!(rooted_isomorphic(&cb.ball, &u));
    }

    #[test]
    fn four_cycle_unrolls_to_line() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let phi = spanning_tree_voltage(&c4).unwrap();
        let cb = cover_ball(&c4, &phi, 0, 3).unwrap();
        assert_eq!(cb.ball.vertex_count(), 7);
        assert_eq!(cb.ball.graph.edge_count(), 6);
        assert!(cb.ball.graph.degrees().iter().all(|&d| d <= 2));
    }

    #[test]
    fn trivial_voltage_on_tree_is_the_tree() {
        let t = MultiGraph::star(3).unwrap();
        let phi = VoltageAssignment::trivial(&t, 0);
        let cb = cover_ball(&t, &phi, 0, 5).unwrap();
        assert_eq!(cb.ball.vertex_count(), 4);
        assert!(cb.ball.is_complete());
    }

    #[test]
    fn cap_is_enforced() {
        let b = MultiGraph::bouquet(2).unwrap();
        let phi = spanning_tree_voltage(&b).unwrap();
        assert!(matches!(cover_ball_capped(&b, &phi, 0, 5, 100), Err(Error::SizeCap { .. })));
        assert!(matches!(universal_cover_ball_capped(&b, 0, 5, 100), Err(Error::SizeCap { .. })));
    }
}
