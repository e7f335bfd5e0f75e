use std::collections::{BTreeMap, VecDeque};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, RootedBall};
use crate::voltage::{derived_lift_n, LiftSample, Permutation, VoltageAssignment};

/// Degree law `(p_i)_{i >= 3}`; serialized as `{"3": 0.5, "4": 0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<usize, f64>", into = "BTreeMap<usize, f64>")]
pub struct DegreeDistribution {
    degrees: Vec<usize>,
    probabilities: Vec<f64>,
    /// `q_{i-1} = i p_i / sum_j j p_j`, indexed like `degrees`.
    offspring: Vec<f64>,
}

impl DegreeDistribution {
    pub fn new(law: BTreeMap<usize, f64>) -> Result<Self> {
        let law: BTreeMap<usize, f64> = law.into_iter().filter(|&(_, p)| p != 0.0).collect();
        if law.is_empty() {
            return Err(Error::invalid("empty degree distribution"));
        }
        if let Some((&d, _)) = law.iter().find(|(&d, _)| d < 3) {
            return Err(Error::invalid(format!("degree {d} in support; degrees must be at least 3")));
        }
        if let Some((&d, &p)) = law.iter().find(|(_, &p)| !(p.is_finite() && p > 0.0)) {
            return Err(Error::invalid(format!("probability {p} for degree {d}")));
        }
        let total: f64 = law.values().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        let degrees: Vec<usize> = law.keys().copied().collect();
        let probabilities: Vec<f64> = law.values().copied().collect();
        let mean: f64 = degrees.iter().zip(&probabilities).map(|(&d, p)| d as f64 * p).sum();
        let offspring = degrees.iter().zip(&probabilities).map(|(&d, p)| d as f64 * p / mean).collect();
        Ok(DegreeDistribution { degrees, probabilities, offspring })
    }

    /// All mass on `d`.
    pub fn regular(d: usize) -> Result<Self> {
        Self::new(BTreeMap::from([(d, 1.0)]))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn support(&self) -> &[usize] {
        &self.degrees
    }

    pub fn probability(&self, d: usize) -> f64 {
        self.degrees.iter().position(|&x| x == d).map_or(0.0, |i| self.probabilities[i])
    }

    /// Probability that a non-root vertex has degree `d` (`d - 1` children).
    pub fn offspring_probability(&self, d: usize) -> f64 {
        self.degrees.iter().position(|&x| x == d).map_or(0.0, |i| self.offspring[i])
    }

    pub fn mean(&self) -> f64 {
        self.degrees.iter().zip(&self.probabilities).map(|(&d, p)| d as f64 * p).sum()
    }

    /// Degree sequence of length `n` with counts `round(n p_i)`, remainders
    /// assigned by largest fractional part (ties to smaller degrees).
    pub fn degree_sequence(&self, n: usize) -> Vec<usize> {
        let raw: Vec<f64> = self.probabilities.iter().map(|p| p * n as f64).collect();
        let mut counts: Vec<usize> = raw.iter().map(|x| x.floor() as usize).collect();
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| (raw[b] - raw[b].floor()).total_cmp(&(raw[a] - raw[a].floor())).then(a.cmp(&b)));
        let missing = n - counts.iter().sum::<usize>();
        for &i in order.iter().take(missing) {
            counts[i] += 1;
        }
        self.degrees.iter().zip(counts).flat_map(|(&d, c)| std::iter::repeat_n(d, c)).collect()
    }
}

impl TryFrom<BTreeMap<usize, f64>> for DegreeDistribution {
    type Error = Error;

    fn try_from(law: BTreeMap<usize, f64>) -> Result<Self> {
        Self::new(law)
    }
}

impl From<DegreeDistribution> for BTreeMap<usize, f64> {
    fn from(d: DegreeDistribution) -> Self {
        d.degrees.into_iter().zip(d.probabilities).collect()
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform permutation of `0..n` (Fisher-Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::from_image(image).expect("shuffled identity is a permutation")
}

/// Lift of `h` along `phi` with independent uniform permutations of `[n]`.
pub fn phi_random_lift(h: &MultiGraph, phi: &VoltageAssignment, n: usize, seed: u64) -> Result<LiftSample> {
    phi_random_lift_with(h, phi, n, &mut rng(seed))
}

pub fn phi_random_lift_with<R: Rng + ?Sized>(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    n: usize,
    rng: &mut R,
) -> Result<LiftSample> {
    if n == 0 {
        return Err(Error::invalid("lift size must be at least 1"));
    }
    let perms = (0..phi.rank()).map(|_| random_permutation(n, rng)).collect();
    derived_lift_n(h, phi, perms, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingOptions {
    /// Resample until the graph has no loops or multiple edges.
    pub simple: bool,
    pub max_attempts: usize,
}

impl Default for PairingOptions {
    fn default() -> Self {
        PairingOptions { simple: false, max_attempts: 10_000 }
    }
}

/// Pairing model: `n d` stubs matched uniformly.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<MultiGraph> {
    random_regular_with(n, d, seed, PairingOptions::default())
}

pub fn random_regular_with(n: usize, d: usize, seed: u64, options: PairingOptions) -> Result<MultiGraph> {
    configuration_model_with(&vec![d; n], seed, options)
}

/// Uniform matching of the stubs of `degrees`.
pub fn configuration_model(degrees: &[usize], seed: u64) -> Result<MultiGraph> {
    configuration_model_with(degrees, seed, PairingOptions::default())
}

pub fn configuration_model_with(degrees: &[usize], seed: u64, options: PairingOptions) -> Result<MultiGraph> {
    let mut rng = rng(seed);
    for _ in 0..options.max_attempts.max(1) {
        let g = pairing(degrees, &mut rng)?;
        if !options.simple || g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::RejectionLimit(options.max_attempts.max(1)))
}

pub(crate) fn pairing<R: Rng + ?Sized>(degrees: &[usize], rng: &mut R) -> Result<MultiGraph> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::OddDegreeSum(total));
    }
    let mut stubs: Vec<usize> = degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let edges: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    let bound = degrees.iter().copied().max().unwrap_or(0).max(1);
    MultiGraph::with_degree_bound(degrees.len(), &edges, bound)
}

/// Connected simple graph on `n` vertices: a random recursive tree (vertex
/// `i` attaches to a uniform earlier vertex) plus each remaining pair with
/// probability `extra`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, extra: f64, rng: &mut R) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::invalid("graph needs at least one vertex"));
    }
    let mut adjacent = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        adjacent[i][j] = true;
        adjacent[j][i] = true;
        edges.push((j, i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !adjacent[i][j] && rng.random_bool(extra.clamp(0.0, 1.0)) {
                edges.push((i, j));
            }
        }
    }
    MultiGraph::with_degree_bound(n, &edges, n.max(1))
}

/// Depth-`radius` ball of the unimodular Galton-Watson tree: the root has
/// degree law `p`, every other vertex degree law `q` (one edge to its
/// parent). Vertices at depth `radius` get a sampled ambient degree but no
/// children.
pub fn ugw_ball(dist: &DegreeDistribution, radius: usize, seed: u64) -> Result<RootedBall> {
    ugw_ball_with(dist, radius, &mut rng(seed))
}

pub fn ugw_ball_with<R: Rng + ?Sized>(dist: &DegreeDistribution, radius: usize, rng: &mut R) -> Result<RootedBall> {
    let root_law = WeightedIndex::new(&dist.probabilities).map_err(|e| Error::invalid(e.to_string()))?;
    let child_law = WeightedIndex::new(&dist.offspring).map_err(|e| Error::invalid(e.to_string()))?;
    let mut ambient = vec![dist.degrees[root_law.sample(rng)]];
    let mut depth = vec![0usize];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if depth[v] == radius {
            continue;
        }
        let children = if v == 0 { ambient[v] } else { ambient[v] - 1 };
        for _ in 0..children {
            let c = ambient.len();
            ambient.push(dist.degrees[child_law.sample(rng)]);
            depth.push(depth[v] + 1);
            edges.push((v, c));
            queue.push_back(c);
        }
    }
    let bound = dist.degrees.last().copied().unwrap_or(1);
    let graph = MultiGraph::with_degree_bound(ambient.len(), &edges, bound)?;
    let origin = (0..ambient.len()).collect();
    Ok(RootedBall::new(graph, 0, radius, ambient, depth, origin))
}
