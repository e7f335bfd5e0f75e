use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, CHEEGER_BRUTE_FORCE_CAP};

/// Default label range `[k]`.
pub const DEFAULT_LABEL_RANGE: usize = 6;

/// Labels in `1..=k`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecorationLabeling {
    pub labels: Vec<usize>,
}

impl DecorationLabeling {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if let Some(v) = labels.iter().position(|&l| l == 0) {
            return Err(Error::invalid(format!("vertex {v} has label 0; labels start at 1")));
        }
        Ok(DecorationLabeling { labels })
    }

    pub fn uniform<R: Rng + ?Sized>(vertex_count: usize, k: usize, rng: &mut R) -> Self {
        DecorationLabeling { labels: (0..vertex_count).map(|_| rng.random_range(1..=k.max(1))).collect() }
    }

    pub fn max_label(&self) -> usize {
        self.labels.iter().copied().max().unwrap_or(0)
    }
}

/// A graph with a pendant path of `l(v) - 1` edges hung at each `v`.
#[derive(Debug, Clone)]
pub struct Decoration {
    pub graph: MultiGraph,
    /// For each vertex of `graph`, the original vertex its path hangs from
    /// (itself for original vertices, which keep their indices).
    pub anchor: Vec<usize>,
    /// Distance along the pendant path; 0 for original vertices.
    pub depth: Vec<usize>,
}

pub fn decorate_with_paths(g: &MultiGraph, labeling: &DecorationLabeling) -> Result<Decoration> {
    let n = g.vertex_count();
    if labeling.labels.len() != n {
        return Err(Error::invalid(format!("{} labels for {} vertices", labeling.labels.len(), n)));
    }
    DecorationLabeling::new(labeling.labels.clone())?;
    let mut edges = g.edges();
    let mut anchor: Vec<usize> = (0..n).collect();
    let mut depth = vec![0; n];
    for (v, &l) in labeling.labels.iter().enumerate() {
        let mut prev = v;
        for i in 1..l {
            let w = anchor.len();
            anchor.push(v);
            depth.push(i);
            edges.push((prev, w));
            prev = w;
        }
    }
    let bound = g.degree_bound().max(1 + (0..n).map(|v| g.degree(v)).max().unwrap_or(0));
    let graph = MultiGraph::with_degree_bound(anchor.len(), &edges, bound)?;
    Ok(Decoration { graph, anchor, depth })
}

/// Exact volume-normalized Cheeger constant of the decoration of `g`,
/// without building all subsets of the decorated graph: for each subset of
/// original vertices, the best pendant-path choices are combined by a
/// knapsack over volume. `g` may have up to the brute-force cap of vertices.
pub fn decorated_cheeger(g: &MultiGraph, labeling: &DecorationLabeling) -> Result<Ratio<i64>> {
    let n = g.vertex_count();
    if n > CHEEGER_BRUTE_FORCE_CAP {
        return Err(Error::SizeCap { what: "decorated Cheeger base graph", size: n, cap: CHEEGER_BRUTE_FORCE_CAP });
    }
    if labeling.labels.len() != n {
        return Err(Error::invalid(format!("{} labels for {} vertices", labeling.labels.len(), n)));
    }
    DecorationLabeling::new(labeling.labels.clone())?;
    g.require_connected()?;
    if n + labeling.labels.iter().map(|l| l - 1).sum::<usize>() < 2 {
        return Err(Error::invalid("Cheeger constant needs at least two vertices"));
    }

    // Path options per (vertex, membership): minimal boundary for each volume.
    let options: Vec<[Vec<(usize, usize)>; 2]> =
        labeling.labels.iter().map(|&l| [path_options(l - 1, false), path_options(l - 1, true)]).collect();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v) + usize::from(labeling.labels[v] > 1)).collect();
    let total: usize =
        degree.iter().sum::<usize>() + labeling.labels.iter().map(|&l| 2 * (l - 1) - usize::from(l > 1)).sum::<usize>();
    let half = total / 2;
    let crossing: Vec<(usize, usize)> = g.edges().into_iter().filter(|(u, v)| u != v).collect();

    const NONE: usize = usize::MAX;
    let mut best: Option<Ratio<i64>> = None;
    let mut cur = vec![NONE; half + 1];
    let mut next = vec![NONE; half + 1];
    for mask in 0u32..(1u32 << n) {
        let inside = |v: usize| mask & (1 << v) != 0;
        let base_volume: usize = (0..n).filter(|&v| inside(v)).map(|v| degree[v]).sum();
        if base_volume > half {
            continue;
        }
        let base_boundary = crossing.iter().filter(|&&(u, v)| inside(u) != inside(v)).count();
        cur.iter_mut().for_each(|x| *x = NONE);
        cur[base_volume] = base_boundary;
        for v in 0..n {
            next.iter_mut().for_each(|x| *x = NONE);
            for (vol, &b) in cur.iter().enumerate() {
                if b == NONE {
                    continue;
                }
                for &(dv, db) in &options[v][usize::from(inside(v))] {
                    let w = vol + dv;
                    if w <= half && b + db < next[w] {
                        next[w] = b + db;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        for (vol, &b) in cur.iter().enumerate().skip(1) {
            if b != NONE {
                let r = Ratio::new(b as i64, vol as i64);
                if best.is_none_or(|x| r < x) {
                    best = Some(r);
                }
            }
        }
    }
    best.ok_or_else(|| Error::invalid("no admissible vertex subset for the Cheeger ratio"))
}

/// `(volume, boundary)` pairs, one per achievable volume with minimal
/// boundary, over subsets of a pendant path of `len` vertices hanging from
/// an anchor whose membership is `anchor_in`.
fn path_options(len: usize, anchor_in: bool) -> Vec<(usize, usize)> {
    let mut best: Vec<usize> = vec![usize::MAX; 2 * len + 1];
    for mask in 0u32..(1u32 << len) {
        let mut prev = anchor_in;
        let (mut volume, mut boundary) = (0, 0);
        for i in 0..len {
            let x = mask & (1 << i) != 0;
            if x {
                volume += if i + 1 == len { 1 } else { 2 };
            }
            boundary += usize::from(x != prev);
            prev = x;
        }
        best[volume] = best[volume].min(boundary);
    }
    best.into_iter().enumerate().filter(|&(_, b)| b != usize::MAX).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cheeger_constant;

    #[test]
    fn trivial_labels_keep_graph() {
        let g = MultiGraph::cycle(5).unwrap();
        let d = decorate_with_paths(&g, &DecorationLabeling::new(vec![1; 5]).unwrap()).unwrap();
        assert_eq!(d.graph, g);
    }

    #[test]
    fn k2_pendant() {
        let g = MultiGraph::path(2).unwrap();
        let d = decorate_with_paths(&g, &DecorationLabeling::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(d.graph.vertex_count(), 3);
        assert_eq!(d.graph.degrees(), vec![2, 1, 1]);
        assert_eq!(d.anchor, vec![0, 1, 0]);
    }

    #[test]
    fn zero_label_rejected() {
        assert!(DecorationLabeling::new(vec![1, 0]).is_err());
    }

    #[test]
    fn knapsack_matches_brute_force() {
        let cases = [
            (MultiGraph::path(2).unwrap(), vec![6, 6]),
            (MultiGraph::cycle(3).unwrap(), vec![3, 1, 4]),
            (MultiGraph::star(3).unwrap(), vec![2, 3, 1, 2]),
            (MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 0)]).unwrap(), vec![5, 2]),
        ];
        for (g, labels) in cases {
            let labeling = DecorationLabeling::new(labels).unwrap();
            let dec = decorate_with_paths(&g, &labeling).unwrap();
            assert_eq!(decorated_cheeger(&g, &labeling).unwrap(), cheeger_constant(&dec.graph).unwrap().value);
        }
    }
}
