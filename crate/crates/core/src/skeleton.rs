//! Skeleton Markov chains of rooted types: the root moves to a uniform
//! neighbor and only the rooted-isomorphism type of the new root is kept.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{ball, MultiGraph, RootedBall};
use crate::spectral::{SpectrumKind, SpectrumMultiset, DENSE_TOLERANCE};
use crate::voltage::{cover_ball_capped, VoltageAssignment, DEFAULT_COVER_VERTEX_CAP};

/// Largest graph typed by whole-graph canonical forms.
pub const EXACT_SKELETON_CAP: usize = 200;
/// Largest detailed-balance defect accepted by [`structured_spectrum`].
pub const REVERSIBILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonState {
    #[serde(serialize_with = "hex")]
    pub code: Vec<u8>,
    /// Vertex count of the representative.
    pub size: usize,
    /// Root degree of the representative.
    pub degree: usize,
    #[serde(skip)]
    pub representative: RootedBall,
}

fn hex<S: Serializer>(code: &[u8], s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&code.iter().map(|b| format!("{b:02x}")).collect::<String>())
}

fn ratios<S: Serializer>(m: &[Vec<Ratio<i64>>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn ratio_row<S: Serializer>(row: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(row.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonChain {
    pub states: Vec<SkeletonState>,
    pub transition: Vec<Vec<f64>>,
    #[serde(serialize_with = "ratios")]
    pub transition_exact: Vec<Vec<Ratio<i64>>>,
    pub stationary: Vec<f64>,
    #[serde(serialize_with = "ratio_row")]
    pub stationary_exact: Vec<Ratio<i64>>,
    /// Type radius; `None` for whole-graph types.
    pub radius: Option<usize>,
    /// `‖ν* P − ν*‖₁`, computed exactly.
    pub stationary_residual: f64,
    /// `max |ν*(s) P[s][t] − ν*(t) P[t][s]|`.
    pub reversibility_residual: f64,
    /// For cover chains: state count at radius `r + 1`.
    pub states_at_next_radius: Option<usize>,
    /// For cover chains: whether every fiber gets one type.
    pub fiber_consistent: Option<bool>,
}

impl SkeletonChain {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// True when refining the type radius by one leaves the state count
    /// unchanged.
    pub fn stabilized(&self) -> Option<bool> {
        self.states_at_next_radius.map(|n| n == self.states.len())
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("skeleton JSON serialization");
        v["stabilized"] = serde_json::json!(self.stabilized());
        v.to_string()
    }
}

/// One vertex standing for its fiber or itself: its type, its degree and
/// the sites its half-edges lead to.
struct Site {
    state: usize,
    degree: usize,
    heads: Vec<usize>,
}

fn build_chain(states: Vec<SkeletonState>, sites: &[Site], radius: Option<usize>) -> SkeletonChain {
    let k = states.len();
    let mut counts = vec![vec![0i64; k]; k];
    let mut degree_mass = vec![0i64; k];
    for site in sites {
        degree_mass[site.state] += site.degree as i64;
        for &w in &site.heads {
            counts[site.state][sites[w].state] += 1;
        }
    }
    let total: i64 = degree_mass.iter().sum();
    let transition_exact: Vec<Vec<Ratio<i64>>> =
        (0..k).map(|s| (0..k).map(|t| Ratio::new(counts[s][t], degree_mass[s])).collect()).collect();
    let stationary_exact: Vec<Ratio<i64>> = degree_mass.iter().map(|&m| Ratio::new(m, total)).collect();

    let mut stationary_residual = Ratio::zero();
    for t in 0..k {
        let flow: Ratio<i64> = (0..k).map(|s| stationary_exact[s] * transition_exact[s][t]).sum();
        let d = flow - stationary_exact[t];
        stationary_residual += if d < Ratio::zero() { -d } else { d };
    }
    let mut reversibility_residual: f64 = 0.0;
    for s in 0..k {
        for t in 0..k {
            let d = stationary_exact[s] * transition_exact[s][t] - stationary_exact[t] * transition_exact[t][s];
            reversibility_residual = reversibility_residual.max(to_f64(&d).abs());
        }
    }
    SkeletonChain {
        transition: transition_exact.iter().map(|row| row.iter().map(to_f64).collect()).collect(),
        stationary: stationary_exact.iter().map(to_f64).collect(),
        states,
        transition_exact,
        stationary_exact,
        radius,
        stationary_residual: to_f64(&stationary_residual),
        reversibility_residual,
        states_at_next_radius: None,
        fiber_consistent: None,
    }
}

fn to_f64(x: &Ratio<i64>) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Groups rooted balls by canonical code, in order of first appearance.
fn classify(balls: Vec<RootedBall>) -> (Vec<SkeletonState>, Vec<usize>) {
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut of = Vec::with_capacity(balls.len());
    for b in balls {
        let code = b.canonical_code().to_vec();
        let next = states.len();
        let s = *index.entry(code.clone()).or_insert(next);
        if s == next {
            states.push(SkeletonState {
                code,
                size: b.vertex_count(),
                degree: b.graph.degree(b.root),
                representative: b,
            });
        }
        of.push(s);
    }
    (states, of)
}

/// Skeleton chain of a finite connected graph with exact rooted types.
pub fn skeleton_exact_finite(g: &MultiGraph) -> Result<SkeletonChain> {
    let n = g.vertex_count();
    if n > EXACT_SKELETON_CAP {
        return Err(Error::SizeCap { what: "exact skeleton vertex count", size: n, cap: EXACT_SKELETON_CAP });
    }
    g.require_connected()?;
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::ZeroDegree(v));
    }
    let balls = (0..n).map(|v| RootedBall::whole(g.clone(), v)).collect::<Result<Vec<_>>>()?;
    let (states, of) = classify(balls);
    let sites: Vec<Site> =
        (0..n).map(|v| Site { state: of[v], degree: g.degree(v), heads: g.neighbors(v).collect() }).collect();
    Ok(build_chain(states, &sites, None))
}

/// Smallest sample radius that shows every fiber with a fully visible
/// radius-`r` ball: `r + diam(H) + 1`.
pub fn default_sample_radius(h: &MultiGraph, r: usize) -> Result<usize> {
    h.require_connected()?;
    Ok(r + h.diameter() + 1)
}

/// Skeleton chain of the cover of `h` determined by `phi`, with types the
/// canonical codes of radius-`r` balls. Types are read off cover vertices
/// within distance `R - r - 1` of the base point, one fiber at a time;
/// deck transformations act transitively on fibers, so a fiber has one type.
/// The chain is also built at `r + 1` to report stabilization.
pub fn skeleton_for_cover(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    r: usize,
    sample_radius: Option<usize>,
) -> Result<SkeletonChain> {
    let mut chain = cover_chain(h, phi, r, sample_radius)?;
    let finer = cover_chain(h, phi, r + 1, sample_radius.map(|x| x + 1))?;
    chain.states_at_next_radius = Some(finer.state_count());
    Ok(chain)
}

fn cover_chain(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    r: usize,
    sample_radius: Option<usize>,
) -> Result<SkeletonChain> {
    let big_r = match sample_radius {
        Some(x) => x,
        None => default_sample_radius(h, r)?,
    };
    if big_r < r + 1 {
        return Err(Error::invalid(format!("sample radius {big_r} must exceed type radius {r}")));
    }
    let cover = cover_ball_capped(h, phi, 0, big_r, DEFAULT_COVER_VERTEX_CAP)?;
    let visible = big_r - r - 1;
    let n = h.vertex_count();

    let mut codes: Vec<Option<Vec<u8>>> = vec![None; n];
    let mut representative: Vec<Option<RootedBall>> = vec![None; n];
    let mut consistent = true;
    for x in 0..cover.ball.vertex_count() {
        if cover.ball.dist[x] > visible {
            continue;
        }
        let u = cover.ball.origin[x];
        let b = ball(&cover.ball.graph, x, r)?;
        match &codes[u] {
            None => {
                codes[u] = Some(b.canonical_code().to_vec());
                representative[u] = Some(b);
            }
            Some(c) => consistent &= c.as_slice() == b.canonical_code(),
        }
    }
    if let Some(u) = codes.iter().position(Option::is_none) {
        return Err(Error::invalid(format!(
            "no lift of base vertex {u} within distance {visible}; raise the sample radius"
        )));
    }
    let (states, of) = classify(representative.into_iter().map(Option::unwrap).collect());
    let sites: Vec<Site> =
        (0..n).map(|u| Site { state: of[u], degree: h.degree(u), heads: h.neighbors(u).collect() }).collect();
    let mut chain = build_chain(states, &sites, Some(r));
    chain.fiber_consistent = Some(consistent);
    Ok(chain)
}

/// `‖ν* P − ν*‖₁` in floating point.
pub fn stationary_check(chain: &SkeletonChain) -> f64 {
    let k = chain.states.len();
    (0..k)
        .map(|t| {
            let flow: f64 = (0..k).map(|s| chain.stationary[s] * chain.transition[s][t]).sum();
            (flow - chain.stationary[t]).abs()
        })
        .sum()
}

/// Eigenvalues of `P`, symmetrized by `sqrt(ν*)` weights.
pub fn structured_spectrum(chain: &SkeletonChain) -> Result<SpectrumMultiset> {
    if chain.reversibility_residual > REVERSIBILITY_TOLERANCE {
        return Err(Error::NonReversible(chain.reversibility_residual));
    }
    let k = chain.states.len();
    let w: Vec<f64> = chain.stationary.iter().map(|x| x.sqrt()).collect();
    let m = DMatrix::from_fn(k, k, |s, t| {
        let a = w[s] * chain.transition[s][t] / w[t];
        let b = w[t] * chain.transition[t][s] / w[s];
        0.5 * (a + b)
    });
    let values = if k == 0 { Vec::new() } else { SymmetricEigen::new(m).eigenvalues.iter().copied().collect() };
    Ok(SpectrumMultiset::new(values, DENSE_TOLERANCE, SpectrumKind::Full))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn transitive_single_state() {
        let c = skeleton_exact_finite(&MultiGraph::cycle(4).unwrap()).unwrap();
        assert_eq!(c.state_count(), 1);
        assert_eq!(c.transition_exact, vec![vec![r(1, 1)]]);
        assert_eq!(structured_spectrum(&c).unwrap().values, vec![1.0]);
        assert_eq!(stationary_check(&c), 0.0);
    }

    #[test]
    fn path_three() {
        let c = skeleton_exact_finite(&MultiGraph::path(3).unwrap()).unwrap();
        assert_eq!(c.state_count(), 2);
        // State 0 is the end (vertex 0), state 1 the center.
        assert_eq!(c.transition_exact, vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]);
        assert_eq!(c.stationary_exact, vec![r(1, 2), r(1, 2)]);
        let s = structured_spectrum(&c).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-12 && (s.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_center_half() {
        let c = skeleton_exact_finite(&MultiGraph::star(3).unwrap()).unwrap();
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.stationary_exact[0], r(1, 2));
        assert_eq!(c.stationary_residual, 0.0);
    }

    #[test]
    fn bouquet_cover_single_state() {
        let h = MultiGraph::bouquet(2).unwrap();
        let phi = VoltageAssignment::free_on_edges(&h);
        for radius in 0..3 {
            let c = skeleton_for_cover(&h, &phi, radius, None).unwrap();
            assert_eq!(c.state_count(), 1);
            assert_eq!(c.stabilized(), Some(true));
        }
    }

    #[test]
    fn path_with_loop_distinguishes_fibers() {
        // Vertex 0 carries a loop, vertex 1 is the other end.
        let h = MultiGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let phi = VoltageAssignment::free_on_edges(&h);
        let c = skeleton_for_cover(&h, &phi, 2, None).unwrap();
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.fiber_consistent, Some(true));
        assert!(c.reversibility_residual == 0.0);
        assert!(c.to_json().contains("\"stabilized\":true"));
    }
}
