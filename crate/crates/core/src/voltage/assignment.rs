use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Free-group voltages on the half-edges of a base graph, with
/// `volt(inv h) = volt(h)^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageAssignment {
    rank: usize,
    volt: Vec<Word>,
}

impl VoltageAssignment {
    /// One word per edge, read on the edge's stored orientation `u -> v`.
    pub fn from_edge_words(base: &MultiGraph, rank: usize, words: Vec<Word>) -> Result<Self> {
        if words.len() != base.edge_count() {
            return Err(Error::invalid(format!("{} edge words for {} edges", words.len(), base.edge_count())));
        }
        let mut volt = Vec::with_capacity(2 * words.len());
        for w in words {
            if w.rank() != rank {
                return Err(Error::RankMismatch(rank, w.rank()));
            }
            let inv = w.inverse();
            volt.push(w);
            volt.push(inv);
        }
        Ok(VoltageAssignment { rank, volt })
    }

    /// Every half-edge carries the identity of the rank-`rank` free group.
    pub fn trivial(base: &MultiGraph, rank: usize) -> Self {
        VoltageAssignment { rank, volt: vec![Word::identity(rank); base.half_edge_count()] }
    }

    /// Edge `k` carries the generator `s_{k+1}`: the fully independent
    /// assignment (e.g. `(s1, s2)` on a bouquet of two loops).
    pub fn free_on_edges(base: &MultiGraph) -> Self {
        let rank = base.edge_count();
        let words = (0..rank).map(|k| Word::generator(k + 1, rank).unwrap()).collect();
        Self::from_edge_words(base, rank, words).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn volt(&self, h: usize) -> &Word {
        &self.volt[h]
    }

    pub fn half_edge_count(&self) -> usize {
        self.volt.len()
    }

    pub(crate) fn check_base(&self, base: &MultiGraph) -> Result<()> {
        if self.volt.len() != base.half_edge_count() {
            return Err(Error::invalid(format!(
                "voltage assignment covers {} half-edges, base graph has {}",
                self.volt.len(),
                base.half_edge_count()
            )));
        }
        Ok(())
    }

    pub fn is_inverse_compatible(&self) -> bool {
        self.volt.chunks(2).all(|p| p[1] == p[0].inverse())
    }

    pub fn to_json_value(&self, base: &MultiGraph) -> VoltageJson {
        VoltageJson {
            rank: self.rank,
            voltages: base
                .edges()
                .into_iter()
                .enumerate()
                .map(|(k, (u, v))| EdgeVoltage { edge: [u, v], word: self.volt[2 * k].letters().to_vec() })
                .collect(),
        }
    }

    pub fn to_json(&self, base: &MultiGraph) -> String {
        serde_json::to_string(&self.to_json_value(base)).expect("voltage JSON serialization")
    }

    pub fn from_json(base: &MultiGraph, s: &str) -> Result<Self> {
        serde_json::from_str::<VoltageJson>(s)?.into_assignment(base)
    }
}

/// Spanning-tree voltages: BFS tree from vertex 0 (half-edges in ascending
/// order) carries the identity, and the `j`-th non-tree edge in edge order
/// carries `s_j` on its stored orientation. The derived cover is the
/// universal cover.
pub fn spanning_tree_voltage(h: &MultiGraph) -> Result<VoltageAssignment> {
    h.require_connected()?;
    let mut tree_edge = vec![false; h.edge_count()];
    let mut seen = vec![false; h.vertex_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &he in h.out_half_edges(v) {
            let w = h.head(he);
            if !seen[w] {
                seen[w] = true;
                tree_edge[he / 2] = true;
                queue.push_back(w);
            }
        }
    }
    let rank = h.edge_count() + 1 - h.vertex_count();
    let mut next = 0usize;
    let words = tree_edge
        .iter()
        .map(|&t| {
            if t {
                Word::identity(rank)
            } else {
                next += 1;
                Word::generator(next, rank).expect("generator within rank")
            }
        })
        .collect();
    debug_assert_eq!(next, rank);
    VoltageAssignment::from_edge_words(h, rank, words)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeVoltage {
    pub edge: [usize; 2],
    pub word: Vec<i32>,
}

/// `{"rank": d, "voltages": [{"edge": [u, v], "word": [..]}, ..]}`.
///
/// Omitted edges carry the identity. An entry `[u, v]` is matched to the
/// first not-yet-matched base edge joining `u` and `v`; when it names the
/// opposite orientation of that edge the word is inverted. Serialization
/// lists every edge in edge order so parallel edges round-trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoltageJson {
    pub rank: usize,
    pub voltages: Vec<EdgeVoltage>,
}

impl VoltageJson {
    pub fn into_assignment(self, base: &MultiGraph) -> Result<VoltageAssignment> {
        let edges = base.edges();
        let mut words: Vec<Option<Word>> = vec![None; edges.len()];
        for entry in self.voltages {
            let [a, b] = entry.edge;
            let slot = edges
                .iter()
                .enumerate()
                .position(|(k, &(u, v))| words[k].is_none() && ((u, v) == (a, b) || (v, u) == (a, b)))
                .ok_or_else(|| Error::invalid(format!("no unmatched base edge [{a}, {b}]")))?;
            let w = Word::from_letters(self.rank, &entry.word)?;
            let (u, _) = edges[slot];
            words[slot] = Some(if u == a { w } else { w.inverse() });
        }
        let words = words.into_iter().map(|w| w.unwrap_or_else(|| Word::identity(self.rank))).collect();
        VoltageAssignment::from_edge_words(base, self.rank, words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_has_rank_zero() {
        let t = MultiGraph::star(3).unwrap();
        let phi = spanning_tree_voltage(&t).unwrap();
        assert_eq!(phi.rank(), 0);
        assert!((0..t.half_edge_count()).all(|h| phi.volt(h).is_empty()));
    }

    #[test]
    fn bouquet_gets_free_generators() {
        let b = MultiGraph::bouquet(2).unwrap();
        let phi = spanning_tree_voltage(&b).unwrap();
        assert_eq!(phi.rank(), 2);
        assert_eq!(phi.volt(0).letters(), &[1]);
        assert_eq!(phi.volt(1).letters(), &[-1]);
        assert_eq!(phi.volt(2).letters(), &[2]);
        assert!(phi.is_inverse_compatible());
    }

    #[test]
    fn four_cycle_has_one_nontrivial_edge() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let phi = spanning_tree_voltage(&c4).unwrap();
        assert_eq!(phi.rank(), 1);
        let nontrivial = (0..c4.edge_count()).filter(|&k| !phi.volt(2 * k).is_empty()).count();
        assert_eq!(nontrivial, 1);
    }

    #[test]
    fn json_orientation_and_omission() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let phi = VoltageAssignment::from_json(&g, r#"{"rank":1,"voltages":[{"edge":[1,0],"word":[1]}]}"#).unwrap();
        assert_eq!(phi.volt(0).letters(), &[-1]);
        assert!(phi.volt(2).is_empty());
        let s = phi.to_json(&g);
        assert_eq!(VoltageAssignment::from_json(&g, &s).unwrap(), phi);
        assert!(VoltageAssignment::from_json(&g, r#"{"rank":1,"voltages":[{"edge":[1,1],"word":[1]}]}"#).is_err());
    }

    #[test]
    fn disconnected_rejected() {
        let g = MultiGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(spanning_tree_voltage(&g), Err(Error::Disconnected)));
    }
}
