use serde::Serialize;

use super::assignment::VoltageAssignment;
use super::perm::{evaluate_word, Permutation};
use crate::error::{Error, Result};
use crate::graph::{io::GraphJson, HalfEdge, MultiGraph};

/// An `n`-fold lift of a base graph together with the data that produced it.
///
/// Lift vertex `(u, i)` has index `u * n + i`. Lift edge `k * n + i` sits over
/// base edge `k` and leaves sheet `i` along the edge's stored orientation.
#[derive(Debug, Clone)]
pub struct LiftSample {
    pub base: MultiGraph,
    pub n: usize,
    pub perms: Vec<Permutation>,
    pub lift: MultiGraph,
    pub covering: Vec<usize>,
}

impl LiftSample {
    #[inline]
    pub fn lift_vertex(&self, u: usize, sheet: usize) -> usize {
        u * self.n + sheet
    }

    /// Base half-edge under a lift half-edge.
    #[inline]
    pub fn base_half_edge(&self, lifted: usize) -> usize {
        2 * (lifted / 2 / self.n) + (lifted & 1)
    }

    /// Every lift vertex's outgoing half-edges map bijectively onto the
    /// outgoing half-edges of its image.
    pub fn is_covering(&self) -> bool {
        (0..self.lift.vertex_count()).all(|x| {
            let u = self.covering[x];
            let mut images: Vec<usize> = self.lift.out_half_edges(x).iter().map(|&h| self.base_half_edge(h)).collect();
            images.sort_unstable();
            images == self.base.out_half_edges(u)
                && self
                    .lift
                    .out_half_edges(x)
                    .iter()
                    .all(|&h| self.covering[self.lift.head(h)] == self.base.head(self.base_half_edge(h)))
        })
    }
}

#[derive(Serialize)]
pub struct LiftSampleJson<'a> {
    pub n: usize,
    pub perms: &'a [Permutation],
    pub base: GraphJson,
    pub lift: GraphJson,
    pub covering: &'a [usize],
}

impl<'a> From<&'a LiftSample> for LiftSampleJson<'a> {
    fn from(s: &'a LiftSample) -> Self {
        LiftSampleJson {
            n: s.n,
            perms: &s.perms,
            base: GraphJson::from(&s.base),
            lift: GraphJson::from(&s.lift),
            covering: &s.covering,
        }
    }
}

/// Derived lift: for every base edge `(u, v)` with voltage `w` and every
/// sheet `i`, join `(u, i)` to `(v, w[S](i))`.
pub fn derived_lift(h: &MultiGraph, phi: &VoltageAssignment, perms: Vec<Permutation>) -> Result<LiftSample> {
    phi.check_base(h)?;
    if perms.len() != phi.rank() {
        return Err(Error::RankMismatch(phi.rank(), perms.len()));
    }
    let n = match perms.first() {
        Some(p) => p.len(),
        None => return Err(Error::invalid("rank-0 voltages need an explicit fold count; use derived_lift_n")),
    };
    lift_with(h, phi, perms, n)
}

/// As [`derived_lift`], with the fold count given explicitly (needed when
/// the rank is zero).
pub fn derived_lift_n(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    perms: Vec<Permutation>,
    n: usize,
) -> Result<LiftSample> {
    phi.check_base(h)?;
    if perms.len() != phi.rank() {
        return Err(Error::RankMismatch(phi.rank(), perms.len()));
    }
    if perms.iter().any(|p| p.len() != n) {
        return Err(Error::invalid("permutation size differs from fold count"));
    }
    lift_with(h, phi, perms, n)
}

fn lift_with(h: &MultiGraph, phi: &VoltageAssignment, perms: Vec<Permutation>, n: usize) -> Result<LiftSample> {
    if n == 0 {
        return Err(Error::invalid("fold count must be positive"));
    }
    let mut half_edges = Vec::with_capacity(h.half_edge_count() * n);
    for (k, (u, v)) in h.edges().into_iter().enumerate() {
        let p = if phi.rank() == 0 { Permutation::identity(n) } else { evaluate_word(phi.volt(2 * k), &perms)? };
        for i in 0..n {
            let a = u * n + i;
            let b = v * n + p.apply(i);
            half_edges.push(HalfEdge { tail: a, head: b });
            half_edges.push(HalfEdge { tail: b, head: a });
        }
    }
    let lift = MultiGraph::from_half_edges(h.vertex_count() * n, half_edges, h.degree_bound())?;
    let covering = (0..h.vertex_count() * n).map(|x| x / n).collect();
    Ok(LiftSample { base: h.clone(), n, perms, lift, covering })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voltage::word::Word;

    #[test]
    fn trivial_voltage_gives_disjoint_copies() {
        let k2 = MultiGraph::path(2).unwrap();
        let phi = VoltageAssignment::trivial(&k2, 1);
        let s = derived_lift(&k2, &phi, vec![Permutation::identity(3)]).unwrap();
        assert_eq!(s.lift.vertex_count(), 6);
        assert_eq!(s.lift.edges(), vec![(0, 3), (1, 4), (2, 5)]);
        assert!(s.is_covering());
    }

    #[test]
    fn loop_with_cycle_permutation_is_cycle() {
        let b = MultiGraph::bouquet(1).unwrap();
        let phi = VoltageAssignment::from_edge_words(&b, 1, vec![Word::generator(1, 1).unwrap()]).unwrap();
        let s = derived_lift(&b, &phi, vec![Permutation::cyclic(5)]).unwrap();
        assert_eq!(s.lift.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(s.is_covering());
    }

    #[test]
    fn rank_zero_needs_fold_count() {
        let t = MultiGraph::path(3).unwrap();
        let phi = VoltageAssignment::trivial(&t, 0);
        assert!(derived_lift(&t, &phi, vec![]).is_err());
        let s = derived_lift_n(&t, &phi, vec![], 4).unwrap();
        assert_eq!(s.lift.vertex_count(), 12);
    }
}
