use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Degree bound applied when none is given explicitly.
pub const DEFAULT_DEGREE_BOUND: usize = 64;

/// One orientation of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfEdge {
    pub tail: usize,
    pub head: usize,
}

/// Half-edge multigraph. Loops and parallel edges are allowed.
///
/// Edge `k` is stored as the half-edges `2k` (tail `u`, head `v`) and
/// `2k + 1` (tail `v`, head `u`), so the involution is `h ^ 1`. A loop is
/// two distinct half-edges at the same vertex and adds 2 to its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    half_edges: Vec<HalfEdge>,
    // CSR of outgoing half-edges, ascending half-edge index within a vertex.
    offsets: Vec<usize>,
    outgoing: Vec<usize>,
    degree_bound: usize,
}

impl MultiGraph {
    /// Builds a graph with the default degree bound.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_degree_bound(vertex_count, edges, DEFAULT_DEGREE_BOUND)
    }

    pub fn with_degree_bound(vertex_count: usize, edges: &[(usize, usize)], degree_bound: usize) -> Result<Self> {
        let mut half_edges = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: x, vertex_count });
                }
            }
            half_edges.push(HalfEdge { tail: u, head: v });
            half_edges.push(HalfEdge { tail: v, head: u });
        }
        Self::from_half_edges(vertex_count, half_edges, degree_bound)
    }

    /// `half_edges` must already be paired as `(2k, 2k + 1)`.
    pub(crate) fn from_half_edges(vertex_count: usize, half_edges: Vec<HalfEdge>, degree_bound: usize) -> Result<Self> {
        debug_assert!(half_edges.len().is_multiple_of(2));
        let mut degree = vec![0usize; vertex_count];
        for he in &half_edges {
            degree[he.tail] += 1;
        }
        if let Some((vertex, &d)) = degree.iter().enumerate().find(|(_, &d)| d > degree_bound) {
            return Err(Error::DegreeBound { vertex, degree: d, bound: degree_bound });
        }
        let mut offsets = vec![0usize; vertex_count + 1];
        for v in 0..vertex_count {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut outgoing = vec![0usize; half_edges.len()];
        for (h, he) in half_edges.iter().enumerate() {
            outgoing[fill[he.tail]] = h;
            fill[he.tail] += 1;
        }
        Ok(MultiGraph { vertex_count, half_edges, offsets, outgoing, degree_bound })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.half_edges.len()
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, h: usize) -> HalfEdge {
        self.half_edges[h]
    }

    #[inline]
    pub fn inv(h: usize) -> usize {
        h ^ 1
    }

    #[inline]
    pub fn tail(&self, h: usize) -> usize {
        self.half_edges[h].tail
    }

    #[inline]
    pub fn head(&self, h: usize) -> usize {
        self.half_edges[h].head
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|v| self.degree(v)).collect()
    }

    /// Outgoing half-edges of `v`, ascending.
    #[inline]
    pub fn out_half_edges(&self, v: usize) -> &[usize] {
        &self.outgoing[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Heads of the outgoing half-edges of `v`, with multiplicity.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_half_edges(v).iter().map(move |&h| self.half_edges[h].head)
    }

    /// Edges as `(tail, head)` of the even half-edge, in edge order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.half_edges.chunks(2).map(|p| (p[0].tail, p[0].head)).collect()
    }

    pub fn loop_count(&self) -> usize {
        self.half_edges.chunks(2).filter(|p| p[0].tail == p[0].head).count()
    }

    /// Number of edges that duplicate an earlier edge between the same
    /// endpoints (loops included).
    pub fn multi_edge_count(&self) -> usize {
        let mut pairs: Vec<(usize, usize)> = self.edges().into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs.windows(2).filter(|w| w[0] == w[1]).count()
    }

    pub fn is_simple(&self) -> bool {
        self.loop_count() == 0 && self.multi_edge_count() == 0
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    pub(crate) fn require_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.vertex_count == 0 {
            return Err(Error::invalid("empty graph"));
        }
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Largest BFS distance from `v` within its component.
    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        (0..self.vertex_count).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }

    // Named families used throughout the tests and the CLI.

    pub fn cycle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cycle needs at least one vertex"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Star with `leaves` leaves; the center is vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    /// One vertex carrying `loops` loops.
    pub fn bouquet(loops: usize) -> Result<Self> {
        Self::from_edges(1, &vec![(0, 0); loops])
    }

    pub fn petersen() -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges)
    }

    pub fn hypercube(dim: usize) -> Result<Self> {
        let n = 1usize << dim;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..dim {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Self::from_edges(n, &edges)
    }
}
