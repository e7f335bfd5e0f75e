//! Canonical codes of rooted multigraphs.
//!
//! Two rooted graphs receive the same code iff they are root-preserving
//! isomorphic. Tree-like graphs (a tree once loops and edge multiplicities
//! are folded into vertex and edge attributes) are encoded directly by
//! nested sorted child codes. Everything else goes through
//! individualization-refinement: the partition by (distance from root,
//! degree, loop count) is refined to an equitable one, non-singleton cells
//! are individualized one vertex at a time, and the lexicographically
//! smallest edge list over all discrete leaves is the code. Branches that
//! are images of explored ones under automorphisms fixing the current
//! prefix are skipped.

use super::multigraph::MultiGraph;

const OPEN: u32 = u32::MAX;
const CLOSE: u32 = u32::MAX - 1;

pub fn canonical_code(g: &MultiGraph, root: usize) -> Vec<u8> {
    let dist = g.distances_from(root);
    let (tag, tokens) = match tree_code(g, root, &dist) {
        Some(tokens) => (b'T', tokens),
        None => (b'G', SearchState::new(g, &dist).run()),
    };
    let mut out = Vec::with_capacity(1 + 4 * tokens.len());
    out.push(tag);
    for t in tokens {
        out.extend_from_slice(&t.to_le_bytes());
    }
    out
}

/// Edges between distinct vertices folded into (neighbor, multiplicity),
/// sorted by neighbor; loops counted separately.
fn folded_adjacency(g: &MultiGraph) -> (Vec<Vec<(usize, u32)>>, Vec<u32>) {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let mut loops = vec![0u32; n];
    for (u, v) in g.edges() {
        if u == v {
            loops[u] += 1;
        } else {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let folded = adj
        .into_iter()
        .map(|mut nb| {
            nb.sort_unstable();
            let mut out: Vec<(usize, u32)> = Vec::new();
            for w in nb {
                match out.last_mut() {
                    Some((x, m)) if *x == w => *m += 1,
                    _ => out.push((w, 1)),
                }
            }
            out
        })
        .collect();
    (folded, loops)
}

fn tree_code(g: &MultiGraph, root: usize, dist: &[usize]) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    if dist.contains(&usize::MAX) {
        return None;
    }
    let (adj, loops) = folded_adjacency(g);
    let simple_edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if simple_edges + 1 != n {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
    let mut codes: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in order {
        let mut children: Vec<Vec<u32>> = adj[v]
            .iter()
            .filter(|&&(w, _)| dist[w] == dist[v] + 1)
            .map(|&(w, m)| {
                let mut entry = vec![m];
                entry.extend_from_slice(&codes[w]);
                entry
            })
            .collect();
        children.sort_unstable();
        let mut code = vec![OPEN, loops[v]];
        for c in children {
            code.extend(c);
        }
        code.push(CLOSE);
        codes[v] = code;
    }
    Some(std::mem::take(&mut codes[root]))
}

struct SearchState {
    n: usize,
    adj: Vec<Vec<(usize, u32)>>,
    edge_list: Vec<(usize, usize)>,
    initial: Vec<u32>,
    best: Option<Vec<u32>>,
    best_inverse: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl SearchState {
    fn new(g: &MultiGraph, dist: &[usize]) -> Self {
        let (adj, loops) = folded_adjacency(g);
        let keys: Vec<(usize, usize, u32)> = (0..g.vertex_count()).map(|v| (dist[v], g.degree(v), loops[v])).collect();
        SearchState {
            n: g.vertex_count(),
            adj,
            edge_list: g.edges(),
            initial: rank(&keys),
            best: None,
            best_inverse: Vec::new(),
            automorphisms: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<u32> {
        let mut colors = self.initial.clone();
        self.refine(&mut colors);
        let mut prefix = Vec::new();
        self.search(colors, &mut prefix);
        self.best.unwrap_or_default()
    }

    fn refine(&self, colors: &mut Vec<u32>) {
        let mut count = distinct(colors);
        loop {
            if count == self.n {
                return;
            }
            let keys: Vec<(u32, Vec<(u32, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut sig: Vec<(u32, u32)> = self.adj[v].iter().map(|&(w, m)| (colors[w], m)).collect();
                    sig.sort_unstable();
                    (colors[v], sig)
                })
                .collect();
            let next = rank(&keys);
            let next_count = distinct(&next);
            *colors = next;
            if next_count == count {
                return;
            }
            count = next_count;
        }
    }

    fn search(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let Some(target) = target_cell(&colors) else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for v in cell {
            if !explored.is_empty() && self.equivalent_to_explored(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut next = individualize(&colors, v);
            self.refine(&mut next);
            prefix.push(v);
            self.search(next, prefix);
            prefix.pop();
        }
    }

    fn equivalent_to_explored(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let mut uf: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for x in 0..self.n {
                    union(&mut uf, x, gamma[x]);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut uf, v);
        explored.iter().any(|&e| find(&mut uf, e) == rv)
    }

    fn leaf(&mut self, colors: &[u32]) {
        let label = |v: usize| colors[v];
        let mut pairs: Vec<(u32, u32)> = self
            .edge_list
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (label(u), label(v));
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        let mut code = Vec::with_capacity(1 + 2 * pairs.len());
        code.push(self.n as u32);
        for (a, b) in pairs {
            code.push(a);
            code.push(b);
        }
        match &self.best {
            Some(best) if code > *best => {}
            Some(best) if code == *best => {
                let gamma: Vec<usize> = (0..self.n).map(|v| self.best_inverse[colors[v] as usize]).collect();
                if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                    self.automorphisms.push(gamma);
                }
            }
            _ => {
                let mut inverse = vec![0usize; self.n];
                for v in 0..self.n {
                    inverse[colors[v] as usize] = v;
                }
                self.best = Some(code);
                self.best_inverse = inverse;
            }
        }
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn target_cell(colors: &[u32]) -> Option<u32> {
    let mut sizes = vec![0usize; distinct(colors)];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes.iter().position(|&s| s > 1).map(|c| c as u32)
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let c = colors[v];
    colors.iter().enumerate().map(|(x, &cx)| if cx > c || (cx == c && x != v) { cx + 1 } else { cx }).collect()
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}
