//! Lanczos iteration with full reorthogonalization for extreme eigenvalues
//! of the symmetrized Markov operator, optionally restricted to the
//! orthogonal complement of a deflation basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::operator::MarkovOperator;
use super::tridiag::tridiagonal_eigen;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LanczosConfig {
    /// Residual bound `|β_{j+1} s_{j,i}|` each selected Ritz pair must meet.
    pub tolerance: f64,
    /// Iteration cap; `None` means `10 * sqrt(dim)`.
    pub max_iterations: Option<usize>,
    /// Seed of the start vector.
    pub seed: u64,
}

impl Default for LanczosConfig {
    fn default() -> Self {
        LanczosConfig { tolerance: 1e-6, max_iterations: None, seed: 0x5eed }
    }
}

/// Which Ritz values must converge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    LargestMagnitude(usize),
    /// Smallest and largest algebraic.
    BothEnds,
}

#[derive(Debug, Clone)]
pub struct LanczosOutcome {
    /// Selected Ritz values: by descending magnitude for
    /// `LargestMagnitude`, `[min, max]` for `BothEnds`.
    pub values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    /// True when the Krylov space became invariant (all Ritz values exact).
    pub exhausted: bool,
}

/// Orthonormalizes `basis` (modified Gram-Schmidt, twice), dropping
/// numerically dependent vectors.
pub fn orthonormalize(basis: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in basis {
        let mut w = v.clone();
        let original = norm(&w);
        for _ in 0..2 {
            for q in &out {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let nw = norm(&w);
        if nw > 1e-10 * original.max(1e-300) {
            w.iter_mut().for_each(|x| *x /= nw);
            out.push(w);
        }
    }
    out
}

/// Runs Lanczos on `op` restricted to the complement of the orthonormal
/// `deflation` vectors.
pub fn lanczos(
    op: &MarkovOperator,
    deflation: &[Vec<f64>],
    selection: Selection,
    config: &LanczosConfig,
) -> Result<LanczosOutcome> {
    let n = op.dim();
    let domain = n.saturating_sub(deflation.len());
    if domain == 0 {
        return Ok(LanczosOutcome { values: vec![], residuals: vec![], iterations: 0, exhausted: true });
    }
    let cap = config.max_iterations.unwrap_or_else(|| (10.0 * (n as f64).sqrt()).ceil() as usize).clamp(1, domain);

    let project = |w: &mut [f64]| {
        for q in deflation {
            let c = dot(q, w);
            axpy(-c, q, w);
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    project(&mut v);
    project(&mut v);
    let nv = norm(&v);
    if nv == 0.0 {
        return Err(Error::invalid("start vector vanished after deflation"));
    }
    v.iter_mut().for_each(|x| *x /= nv);

    let mut basis: Vec<Vec<f64>> = vec![v];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut last_residual = f64::INFINITY;

    for j in 0..cap {
        op.apply(&basis[j], &mut w);
        project(&mut w);
        let a = dot(&basis[j], &w);
        alpha.push(a);
        axpy(-a, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
            project(&mut w);
        }
        let b = norm(&w);
        let exhausted = b <= 1e-12 || j + 1 == domain;
        let check = exhausted || j + 1 == cap || (j + 1) % 5 == 0;
        if check {
            let (ritz, last) = tridiagonal_eigen(&alpha, &beta)
                .ok_or(Error::NonConvergence { iterations: j + 1, residual: f64::NAN })?;
            let residual_of = |i: usize| if exhausted { 0.0 } else { (b * last[i]).abs() };
            let chosen = select(&ritz, selection);
            let residuals: Vec<f64> = chosen.iter().map(|&i| residual_of(i)).collect();
            let worst = residuals.iter().copied().fold(0.0, f64::max);
            last_residual = worst;
            if worst <= config.tolerance {
                return Ok(LanczosOutcome {
                    values: chosen.iter().map(|&i| ritz[i]).collect(),
                    residuals,
                    iterations: j + 1,
                    exhausted,
                });
            }
        }
        if exhausted {
            break;
        }
        beta.push(b);
        let next: Vec<f64> = w.iter().map(|x| x / b).collect();
        basis.push(next);
    }
    Err(Error::NonConvergence { iterations: alpha.len(), residual: last_residual })
}

fn select(ritz: &[f64], selection: Selection) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..ritz.len()).collect();
    match selection {
        Selection::LargestMagnitude(k) => {
            idx.sort_by(|&a, &b| ritz[b].abs().total_cmp(&ritz[a].abs()).then(ritz[b].total_cmp(&ritz[a])));
            idx.truncate(k);
            idx
        }
        Selection::BothEnds => {
            idx.sort_by(|&a, &b| ritz[a].total_cmp(&ritz[b]));
            let (lo, hi) = (idx[0], idx[idx.len() - 1]);
            if lo == hi {
                vec![lo]
            } else {
                vec![lo, hi]
            }
        }
    }
}

/// The `k` largest-magnitude eigenvalues of the symmetrized Markov
/// operator of `g`, restricted to the orthogonal complement of
/// `orthogonal_to` (orthonormalized first). Sorted by descending magnitude.
pub fn extreme_eigenvalues(
    g: &MultiGraph,
    k: usize,
    orthogonal_to: Option<&[Vec<f64>]>,
    config: &LanczosConfig,
) -> Result<Vec<f64>> {
    g.require_connected()?;
    let op = MarkovOperator::new(g)?;
    let deflation = orthogonal_to.map(orthonormalize).unwrap_or_default();
    Ok(lanczos(&op, &deflation, Selection::LargestMagnitude(k), config)?.values)
}

/// Largest nontrivial eigenvalue magnitude `ρ(G)`: the top of the spectrum
/// on the complement of the stationary direction.
pub fn nontrivial_radius(g: &MultiGraph, config: &LanczosConfig) -> Result<f64> {
    let op = MarkovOperator::new(g)?;
    let deflation = vec![op.stationary_direction()];
    let out = lanczos(&op, &deflation, Selection::LargestMagnitude(1), config)?;
    Ok(out.values.first().map_or(0.0, |v| v.abs()))
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub(crate) fn axpy(c: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_both_eigenvalues() {
        let k2 = MultiGraph::path(2).unwrap();
        let mut v = extreme_eigenvalues(&k2, 2, None, &LanczosConfig::default()).unwrap();
        v.sort_by(f64::total_cmp);
        assert!((v[0] + 1.0).abs() < 1e-8 && (v[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn four_cycle_deflated() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let stationary = vec![vec![1.0; 4]];
        let v = extreme_eigenvalues(&c4, 1, Some(&stationary), &LanczosConfig::default()).unwrap();
        assert!((v[0].abs() - 1.0).abs() < 1e-8);
        assert!(v[0] < 0.0);
    }

    #[test]
    fn orthonormalize_drops_dependent_vectors() {
        let q = orthonormalize(&[vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0], vec![0.0, 1.0, 0.0]]);
        assert_eq!(q.len(), 2);
        assert!(dot(&q[0], &q[1]).abs() < 1e-14);
    }

    #[test]
    fn iteration_cap_reports_residual() {
        let g = MultiGraph::cycle(400).unwrap();
        let config = LanczosConfig { max_iterations: Some(3), tolerance: 1e-14, ..Default::default() };
        match extreme_eigenvalues(&g, 1, None, &config) {
            Err(Error::NonConvergence { iterations, residual }) => {
                assert_eq!(iterations, 3);
                assert!(residual > 1e-14);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
