use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::{return_probabilities_ball, ReturnSeries, WalkOptions};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, RootedBall};

/// Quenched growth estimate `p_{2N}^{1/2N}` with its convergence curve.
#[derive(Debug, Clone, Serialize)]
pub struct QuenchedEstimate {
    pub estimate: f64,
    /// `p_{2n}^{1/2n}` for `n = 1..=N`.
    pub curve: Vec<f64>,
    /// `sqrt(p_{2N} / p_{2N-2})`, which converges faster on trees.
    pub ratio_diagnostic: Option<f64>,
}

pub fn quenched_rho_estimate(series: &ReturnSeries) -> Result<QuenchedEstimate> {
    let n = series.half_steps;
    if n == 0 || series.values.len() != n {
        return Err(Error::invalid("empty return series"));
    }
    let ratio_diagnostic = (n >= 2 && series.p(n - 1) > 0.0).then(|| (series.p(n) / series.p(n - 1)).sqrt());
    Ok(QuenchedEstimate { estimate: series.estimates[n - 1], curve: series.estimates.clone(), ratio_diagnostic })
}

/// Mean return probabilities over random rooted samples, then the root.
#[derive(Debug, Clone, Serialize)]
pub struct AnnealedEstimate {
    pub estimate: f64,
    pub trials: usize,
    pub seed: u64,
    /// Mean `p_{2n}` for `n = 1..=N`.
    pub mean_p: Vec<f64>,
    /// `mean_p[n]^{1/2n}`.
    pub curve: Vec<f64>,
    /// Estimate recomputed from `mean ± 2 standard errors` at `2N`.
    pub band: (f64, f64),
    pub per_sample_quenched: Vec<f64>,
    pub max_quenched: f64,
}

/// Annealed estimate `(E p_{2N})^{1/2N}`. Trial `t` draws its sample from a
/// generator seeded with `seed ^ t`, so results do not depend on threads.
pub fn annealed_rho_estimate<F>(
    sampler: F,
    half_steps: usize,
    trials: usize,
    seed: u64,
    options: WalkOptions,
) -> Result<AnnealedEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Result<RootedBall> + Sync,
{
    if trials == 0 {
        return Err(Error::invalid("annealed estimate needs at least one trial"));
    }
    let series: Vec<ReturnSeries> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t as u64);
            sampler(&mut rng)
                .and_then(|ball| return_probabilities_ball(&ball, half_steps, options))
                .map_err(|e| Error::Trial { trial: t, source: Box::new(e) })
        })
        .collect::<Result<_>>()?;
    let count = trials as f64;
    let mean_p: Vec<f64> = (1..=half_steps).map(|n| series.iter().map(|s| s.p(n)).sum::<f64>() / count).collect();
    let curve: Vec<f64> = mean_p.iter().enumerate().map(|(i, p)| p.powf(1.0 / (2 * (i + 1)) as f64)).collect();
    let last = mean_p[half_steps - 1];
    let var = if trials > 1 {
        series.iter().map(|s| (s.p(half_steps) - last).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    let se = (var / count).sqrt();
    let root = |p: f64| p.max(0.0).powf(1.0 / (2 * half_steps) as f64);
    let per_sample_quenched: Vec<f64> = series.iter().map(|s| s.estimates[half_steps - 1]).collect();
    let max_quenched = per_sample_quenched.iter().copied().fold(0.0, f64::max);
    Ok(AnnealedEstimate {
        estimate: curve[half_steps - 1],
        trials,
        seed,
        mean_p,
        curve,
        band: (root(last - 2.0 * se), root(last + 2.0 * se)),
        per_sample_quenched,
        max_quenched,
    })
}

/// Outcome of checking `p_{2nl} >= p_{2n}^l` for all `2nl <= 2N`.
#[derive(Debug, Clone, Serialize)]
pub struct SupermultiplicativityReport {
    pub holds: bool,
    pub checked: usize,
    pub exact: bool,
    /// First `(n, l)` with `p_{2nl} < p_{2n}^l`.
    pub violation: Option<(usize, usize)>,
}

/// Exact when the series carries rationals, otherwise with a relative
/// slack of `1e-12`.
pub fn supermultiplicativity_check(series: &ReturnSeries) -> SupermultiplicativityReport {
    let big_n = series.half_steps;
    let mut checked = 0;
    for n in 1..=big_n {
        for l in 2..=big_n / n {
            checked += 1;
            let ok = match &series.exact {
                Some(exact) => {
                    let lhs = &exact[n * l - 1];
                    let rhs = rational_pow(&exact[n - 1], l as u32);
                    *lhs >= rhs
                }
                None => {
                    let lhs = series.p(n * l);
                    let rhs = series.p(n).powi(l as i32);
                    lhs >= rhs * (1.0 - 1e-12)
                }
            };
            if !ok {
                return SupermultiplicativityReport {
                    holds: false,
                    checked,
                    exact: series.exact.is_some(),
                    violation: Some((n, l)),
                };
            }
        }
    }
    SupermultiplicativityReport { holds: true, checked, exact: series.exact.is_some(), violation: None }
}

/// Monte-Carlo return frequencies, a cross-check for the dynamic program.
#[derive(Debug, Clone, Serialize)]
pub struct McReturn {
    pub walkers: usize,
    pub seed: u64,
    /// Return frequency after `k = 1..=steps` steps.
    pub frequencies: Vec<f64>,
    pub standard_errors: Vec<f64>,
}

pub fn mc_walk(g: &MultiGraph, root: usize, steps: usize, walkers: usize, seed: u64) -> Result<McReturn> {
    g.require_vertex(root)?;
    if walkers == 0 {
        return Err(Error::invalid("need at least one walker"));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        return Err(Error::ZeroDegree(v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0usize; steps];
    for _ in 0..walkers {
        let mut v = root;
        for hit in hits.iter_mut() {
            let out = g.out_half_edges(v);
            let h = out[rng.random_range(0..out.len())];
            v = g.head(h);
            if v == root {
                *hit += 1;
            }
        }
    }
    let w = walkers as f64;
    let frequencies: Vec<f64> = hits.iter().map(|&h| h as f64 / w).collect();
    let standard_errors = frequencies.iter().map(|p| (p * (1.0 - p) / w).sqrt()).collect();
    Ok(McReturn { walkers, seed, frequencies, standard_errors })
}

/// `x^l` for exact rationals (zero and one short-circuit).
pub(crate) fn rational_pow(x: &BigRational, l: u32) -> BigRational {
    if x.is_zero() || x.is_one() {
        return x.clone();
    }
    Pow::pow(x, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ball;
    use crate::walks::return_probabilities_graph;

    #[test]
    fn quenched_on_cycle_tends_to_one() {
        let g = MultiGraph::cycle(6).unwrap();
        let s = return_probabilities_graph(&g, 0, 30, WalkOptions::default()).unwrap();
        let q = quenched_rho_estimate(&s).unwrap();
        assert!(q.estimate > 0.9 && q.estimate <= 1.0);
        assert_eq!(q.curve.len(), 30);
    }

    #[test]
    fn supermultiplicativity_on_small_graphs() {
        for g in [MultiGraph::cycle(5).unwrap(), MultiGraph::petersen().unwrap(), MultiGraph::star(4).unwrap()] {
            let s = return_probabilities_graph(&g, 0, 10, WalkOptions::default()).unwrap();
            let r = supermultiplicativity_check(&s);
            assert!(r.holds && r.exact, "{r:?}");
        }
    }

    #[test]
    fn annealed_of_fixed_sample_is_quenched() {
        let g = MultiGraph::petersen().unwrap();
        let b = ball(&g, 0, 3).unwrap();
        let a = annealed_rho_estimate(|_| Ok(b.clone()), 3, 4, 1, WalkOptions::default()).unwrap();
        let q = return_probabilities_ball(&b, 3, WalkOptions::default()).unwrap();
        assert!((a.estimate - q.estimates[2]).abs() < 1e-15);
        assert!((a.max_quenched - a.estimate).abs() < 1e-15);
    }

    #[test]
    fn mc_agrees_with_dp() {
        let g = MultiGraph::cycle(4).unwrap();
        let mc = mc_walk(&g, 0, 4, 20_000, 3).unwrap();
        let dp = return_probabilities_graph(&g, 0, 2, WalkOptions::default()).unwrap();
        assert!((mc.frequencies[1] - dp.p(1)).abs() < 5.0 * mc.standard_errors[1] + 1e-3);
        assert_eq!(mc.frequencies[0], 0.0);
    }

    #[test]
    fn rational_pow_matches() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_pow(&half, 3), BigRational::new(1.into(), 8.into()));
    }
}
