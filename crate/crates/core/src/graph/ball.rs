use std::collections::VecDeque;
use std::sync::OnceLock;

use super::canon;
use super::multigraph::{HalfEdge, MultiGraph};
use crate::error::Result;

/// A rooted graph in which every vertex lies within `radius` of the root.
///
/// Besides the ball itself this records, for each ball vertex, its degree in
/// the ambient graph, its distance from the root and the ambient vertex it
/// came from (for cover balls: its image in the base graph). Walk
/// computations need the ambient degrees because boundary vertices of a ball
/// lose edges.
#[derive(Debug, Clone)]
pub struct RootedBall {
    pub graph: MultiGraph,
    pub root: usize,
    pub radius: usize,
    pub ambient_degree: Vec<usize>,
    pub dist: Vec<usize>,
    pub origin: Vec<usize>,
    code: OnceLock<Vec<u8>>,
}

impl RootedBall {
    pub(crate) fn new(
        graph: MultiGraph,
        root: usize,
        radius: usize,
        ambient_degree: Vec<usize>,
        dist: Vec<usize>,
        origin: Vec<usize>,
    ) -> Self {
        RootedBall { graph, root, radius, ambient_degree, dist, origin, code: OnceLock::new() }
    }

    /// A rooted finite graph seen as a ball of radius equal to the root's
    /// eccentricity. The graph must be connected.
    pub fn whole(graph: MultiGraph, root: usize) -> Result<Self> {
        graph.require_vertex(root)?;
        graph.require_connected()?;
        let dist = graph.distances_from(root);
        let radius = dist.iter().copied().max().unwrap_or(0);
        let ambient_degree = graph.degrees();
        let origin = (0..graph.vertex_count()).collect();
        Ok(RootedBall::new(graph, root, radius, ambient_degree, dist, origin))
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Canonical byte code; equal for two balls iff they are rooted-isomorphic.
    pub fn canonical_code(&self) -> &[u8] {
        self.code.get_or_init(|| canon::canonical_code(&self.graph, self.root))
    }

    /// True when no edge leaves the ball, i.e. the ball is a whole finite
    /// component of the ambient graph.
    pub fn is_complete(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.graph.degree(v) == self.ambient_degree[v])
    }
}

/// Radius-`r` ball of `g` around `v`: the subgraph induced on vertices at
/// distance at most `r`, with vertices numbered in BFS order (ties broken by
/// ascending original index). The root is vertex 0 of the ball.
pub fn ball(g: &MultiGraph, v: usize, r: usize) -> Result<RootedBall> {
    g.require_vertex(v)?;
    let n = g.vertex_count();
    let mut local = vec![usize::MAX; n];
    let mut order = vec![v];
    let mut dist = vec![0usize];
    local[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut nbrs = Vec::new();
    while let Some(x) = queue.pop_front() {
        let dx = dist[local[x]];
        if dx == r {
            continue;
        }
        nbrs.clear();
        nbrs.extend(g.neighbors(x));
        nbrs.sort_unstable();
        nbrs.dedup();
        for &w in &nbrs {
            if local[w] == usize::MAX {
                local[w] = order.len();
                order.push(w);
                dist.push(dx + 1);
                queue.push_back(w);
            }
        }
    }
    let mut half_edges = Vec::new();
    for (h, he) in g.half_edges().iter().enumerate().step_by(2) {
        debug_assert_eq!(h % 2, 0);
        let (a, b) = (local[he.tail], local[he.head]);
        if a != usize::MAX && b != usize::MAX {
            half_edges.push(HalfEdge { tail: a, head: b });
            half_edges.push(HalfEdge { tail: b, head: a });
        }
    }
    let graph = MultiGraph::from_half_edges(order.len(), half_edges, g.degree_bound())?;
    let ambient_degree = order.iter().map(|&x| g.degree(x)).collect();
    Ok(RootedBall::new(graph, 0, r, ambient_degree, dist, order))
}

/// True iff a root-preserving isomorphism between the two balls exists.
pub fn rooted_isomorphic(a: &RootedBall, b: &RootedBall) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.graph.half_edge_count() == b.graph.half_edge_count()
        && a.canonical_code() == b.canonical_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_of_cycle_is_path() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let b = ball(&c4, 2, 1).unwrap();
        assert_eq!(b.vertex_count(), 3);
        assert_eq!(b.graph.edge_count(), 2);
        assert_eq!(b.graph.degree(b.root), 2);
        assert_eq!(b.origin, vec![2, 1, 3]);
        let p3 = RootedBall::whole(MultiGraph::path(3).unwrap(), 1).unwrap();
        assert!(rooted_isomorphic(&b, &p3));
    }

    #[test]
    fn radius_zero() {
        let g = MultiGraph::complete(4).unwrap();
        let b = ball(&g, 3, 0).unwrap();
        assert_eq!(b.vertex_count(), 1);
        assert_eq!(b.graph.edge_count(), 0);
        assert_eq!(b.ambient_degree, vec![3]);
    }

    #[test]
    fn triangle_radius_one_is_everything() {
        let g = MultiGraph::cycle(3).unwrap();
        let b = ball(&g, 0, 1).unwrap();
        assert_eq!(b.vertex_count(), 3);
        assert_eq!(b.graph.edge_count(), 3);
        assert!(b.is_complete());
    }

    #[test]
    fn loops_survive_in_balls() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (1, 1)]).unwrap();
        let b = ball(&g, 0, 1).unwrap();
        assert_eq!(b.graph.loop_count(), 1);
        assert_eq!(b.graph.degree(1), 3);
    }
}
