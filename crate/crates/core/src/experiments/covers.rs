use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::regular::finite;
use super::report::{trial_seed, ExperimentReport};
use crate::error::{Error, Result};
use crate::graph::{ball, MultiGraph};
use crate::random::phi_random_lift;
use crate::spectral::{
    fiber_basis, full_spectrum, hausdorff_distance, lanczos, markov_apply, new_spectrum, CompactSet, LanczosConfig,
    MarkovOperator, NewSpectrumMode, Selection, SpectrumMultiset, DENSE_VERTEX_CAP,
};
use crate::voltage::{cover_ball, VoltageAssignment};
use crate::walks::{return_probabilities_ball, WalkOptions};

/// What is known about the spectrum of the cover `G` of `H`.
#[derive(Debug, Clone, Serialize)]
pub struct CoverTarget {
    /// Exact spectrum when the cover is finite and fits the dense solver.
    pub exact: Option<SpectrumMultiset>,
    /// Largest quenched walk estimate over base vertices (a lower bound
    /// on the spectral radius), or the exact radius.
    pub rho_hat: f64,
    pub per_vertex: Vec<f64>,
    pub half_steps: usize,
}

impl CoverTarget {
    /// `σ(G)`, or the interval `[-ρ̂, ρ̂]` standing in for it.
    pub fn set(&self) -> CompactSet {
        match &self.exact {
            Some(s) => CompactSet::from_points(&s.values),
            None => CompactSet::interval(-self.rho_hat, self.rho_hat),
        }
    }
}

pub fn cover_target(h: &MultiGraph, phi: &VoltageAssignment, half_steps: usize) -> Result<CoverTarget> {
    let first = cover_ball(h, phi, 0, half_steps)?;
    if first.ball.is_complete() && first.ball.vertex_count() <= DENSE_VERTEX_CAP {
        let exact = full_spectrum(&first.ball.graph)?;
        let rho_hat = exact.max_abs();
        return Ok(CoverTarget {
            exact: Some(exact),
            rho_hat,
            per_vertex: vec![rho_hat; h.vertex_count()],
            half_steps,
        });
    }
    let mut per_vertex = Vec::with_capacity(h.vertex_count());
    for u in 0..h.vertex_count() {
        let cb = if u == 0 { first.clone() } else { cover_ball(h, phi, u, half_steps)? };
        let series = return_probabilities_ball(&cb.ball, half_steps, WalkOptions::floats())?;
        per_vertex.push(series.estimates[half_steps - 1]);
    }
    let rho_hat = per_vertex.iter().copied().fold(0.0, f64::max);
    Ok(CoverTarget { exact: None, rho_hat, per_vertex, half_steps })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BordenaveCollinsConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// Reference radius for the verdict; `None` uses the walk estimate.
    pub rho_reference: Option<f64>,
    pub required_fraction: f64,
    /// Half-steps of the walk estimate of the cover's radius.
    pub half_steps: usize,
    /// Lifts up to this many vertices also get a dense new spectrum and
    /// Hausdorff distances.
    pub dense_cap: usize,
    pub lanczos: LanczosConfig,
}

impl Default for BordenaveCollinsConfig {
    fn default() -> Self {
        BordenaveCollinsConfig {
            sizes: vec![200, 500, 1000],
            trials: 20,
            epsilon: 0.06,
            seed: 0,
            rho_reference: None,
            required_fraction: 0.9,
            half_steps: 10,
            dense_cap: 600,
            lanczos: LanczosConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct LiftTrial {
    n: usize,
    trial: usize,
    new_min: Option<f64>,
    new_max: Option<f64>,
    max_abs_new: Option<f64>,
    within: bool,
    hausdorff_new: Option<f64>,
    hausdorff_full: Option<f64>,
    error: Option<String>,
}

/// Smallest and largest new eigenvalue, and the Hausdorff distances when
/// the lift was small enough for the dense solver.
type TrialMeasure = (f64, f64, Option<(f64, f64)>);

/// New eigenvalues of `phi`-random lifts against the spectrum of the cover.
pub fn bordenave_collins_experiment(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    cfg: &BordenaveCollinsConfig,
) -> Result<ExperimentReport> {
    h.require_connected()?;
    phi.check_base(h)?;
    let target = cover_target(h, phi, cfg.half_steps)?;
    let reference = cfg.rho_reference.unwrap_or(target.rho_hat);
    let base_spectrum = full_spectrum(h)?;
    let target_set = target.set();
    let base_atoms = CompactSet::from_points(&base_spectrum.values);
    let full_target = target_set.union(&base_atoms);

    let mut report = ExperimentReport::new("bordenave_collins", cfg.seed);
    report.param("base_vertices", h.vertex_count());
    report.param("base_edges", h.edges());
    report.param("voltage", phi.to_json_value(h));
    report.param("sizes", &cfg.sizes);
    report.param("trials", cfg.trials);
    report.param("epsilon", cfg.epsilon);
    report.param("required_fraction", cfg.required_fraction);
    report.param("half_steps", cfg.half_steps);
    report.param("dense_cap", cfg.dense_cap);
    report.param("lanczos", cfg.lanczos);
    report.param("rho_reference", reference);
    report.stat("rho_hat", target.rho_hat);
    report.stat("rho_hat_per_base_vertex", &target.per_vertex);
    report.stat("cover_spectrum_exact", target.exact.is_some());
    report.stat("base_spectrum", &base_spectrum.values);
    if target.exact.is_none() {
        report.note(
            "The cover is infinite: its spectrum is replaced by [-rho_hat, rho_hat], where rho_hat is a \
             walk-based lower-bound estimate of its spectral radius",
        );
    }

    let jobs: Vec<(usize, usize)> = cfg.sizes.iter().flat_map(|&n| (0..cfg.trials).map(move |t| (n, t))).collect();
    let records: Vec<LiftTrial> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, &(n, t))| {
            let run = || -> Result<TrialMeasure> {
                let sample = phi_random_lift(h, phi, n, trial_seed(cfg.seed, i))?;
                let ext = new_spectrum(
                    &sample,
                    NewSpectrumMode::Extremes { selection: Selection::BothEnds, config: cfg.lanczos },
                )?;
                let (lo, hi) = match ext.values.as_slice() {
                    [] => (f64::NAN, f64::NAN),
                    [x] => (*x, *x),
                    v => (v[0], v[v.len() - 1]),
                };
                let distances = if sample.lift.vertex_count() <= cfg.dense_cap && n > 1 {
                    let dense = new_spectrum(&sample, NewSpectrumMode::Dense)?;
                    let new_set = CompactSet::from_points(&dense.values);
                    let d_new = hausdorff_distance(&new_set, &target_set)?;
                    let d_full = hausdorff_distance(&new_set.union(&base_atoms), &full_target)?;
                    Some((d_new, d_full))
                } else {
                    None
                };
                Ok((lo, hi, distances))
            };
            match run() {
                Ok((lo, hi, d)) => {
                    let m = lo.abs().max(hi.abs());
                    LiftTrial {
                        n,
                        trial: t,
                        new_min: finite(lo),
                        new_max: finite(hi),
                        max_abs_new: finite(m),
                        within: m.is_nan() || m <= reference + cfg.epsilon,
                        hausdorff_new: d.map(|x| x.0),
                        hausdorff_full: d.map(|x| x.1),
                        error: None,
                    }
                }
                Err(e) => LiftTrial {
                    n,
                    trial: t,
                    new_min: None,
                    new_max: None,
                    max_abs_new: None,
                    within: false,
                    hausdorff_new: None,
                    hausdorff_full: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let mut trend_x = Vec::new();
    let mut trend_y = Vec::new();
    for &n in &cfg.sizes {
        let rows: Vec<&LiftTrial> = records.iter().filter(|r| r.n == n).collect();
        let within = rows.iter().filter(|r| r.within).count();
        let fraction = if rows.is_empty() { 0.0 } else { within as f64 / rows.len() as f64 };
        let worst = rows.iter().filter_map(|r| r.max_abs_new).fold(f64::NEG_INFINITY, f64::max);
        report.stat(&format!("n{n}_fraction_within"), fraction);
        report.stat(&format!("n{n}_max_abs_new"), finite(worst));
        let ds: Vec<f64> = rows.iter().filter_map(|r| r.hausdorff_new).collect();
        if !ds.is_empty() {
            let mean = ds.iter().sum::<f64>() / ds.len() as f64;
            report.stat(&format!("n{n}_mean_hausdorff_new"), mean);
            trend_x.push(n as f64);
            trend_y.push(mean);
        }
        report.verdict(
            &format!("fraction_within_n{n}"),
            &["rho_reference", "epsilon", "required_fraction"],
            !rows.is_empty() && fraction >= cfg.required_fraction,
            fraction,
        );
    }
    report.plot("mean_hausdorff_by_n", trend_x, trend_y);
    for (i, r) in records.into_iter().enumerate() {
        report.trial(trial_seed(cfg.seed, i), r);
    }
    Ok(report.finish())
}

/// Bounded functions of the labeled radius-`r` ball around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockFactor {
    /// The vertex's own label.
    CenteredLabel,
    Constant,
    /// Vertex count of the unlabeled ball.
    TypeOnly,
    /// `cos(sum_y w_{d(x,y)} label(y))` with random weights per distance.
    RandomCosine,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelativeRamanujanConfig {
    pub n: usize,
    pub block_radius: usize,
    pub label_seed: u64,
    /// Largest power `K` of the Markov operator.
    pub steps: usize,
    pub seed: u64,
    pub factor: BlockFactor,
    pub rho_reference: Option<f64>,
    /// Curve bound above the reference for `k >= k_min`.
    pub margin: f64,
    pub k_min: usize,
    /// Curve bound above the measured new-eigenvalue radius, all `k`.
    pub rayleigh_slack: f64,
    pub half_steps: usize,
    pub lanczos: LanczosConfig,
}

impl Default for RelativeRamanujanConfig {
    fn default() -> Self {
        RelativeRamanujanConfig {
            n: 2000,
            block_radius: 0,
            label_seed: 1,
            steps: 12,
            seed: 0,
            factor: BlockFactor::CenteredLabel,
            rho_reference: None,
            margin: 0.08,
            k_min: 4,
            rayleigh_slack: 1e-6,
            half_steps: 10,
            lanczos: LanczosConfig::default(),
        }
    }
}

fn block_factor_values(
    g: &MultiGraph,
    labels: &[f64],
    r: usize,
    factor: BlockFactor,
    weight_seed: u64,
) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    Ok(match factor {
        BlockFactor::CenteredLabel => labels.iter().map(|x| x - 0.5).collect(),
        BlockFactor::Constant => vec![1.0; n],
        BlockFactor::TypeOnly => {
            (0..n).map(|x| ball(g, x, r).map(|b| b.vertex_count() as f64)).collect::<Result<_>>()?
        }
        BlockFactor::RandomCosine => {
            let mut rng = ChaCha8Rng::seed_from_u64(weight_seed);
            let w: Vec<f64> = (0..=r).map(|_| rng.random_range(-2.0..2.0)).collect();
            (0..n)
                .map(|x| {
                    let b = ball(g, x, r)?;
                    let s: f64 = (0..b.vertex_count()).map(|i| w[b.dist[i]] * labels[b.origin[i]]).sum();
                    Ok(s.cos())
                })
                .collect::<Result<_>>()?
        }
    })
}

/// Subtracts degree-weighted class means.
fn subtract_class_means(f: &mut [f64], class: &[usize], degree: &[usize]) {
    let k = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut sum = vec![0.0; k];
    let mut mass = vec![0.0; k];
    for v in 0..f.len() {
        sum[class[v]] += degree[v] as f64 * f[v];
        mass[class[v]] += degree[v] as f64;
    }
    for v in 0..f.len() {
        f[v] -= sum[class[v]] / mass[class[v]];
    }
}

/// Rayleigh curve of a projected block factor on a `phi`-random lift.
pub fn relative_ramanujan_rayleigh(
    h: &MultiGraph,
    phi: &VoltageAssignment,
    cfg: &RelativeRamanujanConfig,
) -> Result<ExperimentReport> {
    h.require_connected()?;
    if cfg.steps == 0 {
        return Err(Error::invalid("need at least one step"));
    }
    let sample = phi_random_lift(h, phi, cfg.n, cfg.seed)?;
    let g = &sample.lift;
    let nv = g.vertex_count();
    let degree = g.degrees();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.label_seed);
    let labels: Vec<f64> = (0..nv).map(|_| rng.random::<f64>()).collect();
    let mut f = block_factor_values(g, &labels, cfg.block_radius, cfg.factor, cfg.label_seed ^ 0x5bd1_e995)?;
    let raw_norm: f64 = f.iter().zip(&degree).map(|(x, &d)| d as f64 * x * x).sum::<f64>().sqrt();

    // Structured part: conditional mean given the unlabeled ball type.
    let mut type_index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut class = Vec::with_capacity(nv);
    for x in 0..nv {
        let code = ball(g, x, cfg.block_radius)?.canonical_code().to_vec();
        let next = type_index.len();
        class.push(*type_index.entry(code).or_insert(next));
    }
    subtract_class_means(&mut f, &class, &degree);
    subtract_class_means(&mut f, &sample.covering, &degree);

    let norm2: f64 = f.iter().zip(&degree).map(|(x, &d)| d as f64 * x * x).sum();
    if norm2.sqrt() <= 1e-10 * raw_norm.max(1e-300) {
        return Err(Error::DegenerateBlockFactor(format!(
            "{:?} at radius {} has no random part; try a larger block radius or another label seed",
            cfg.factor, cfg.block_radius
        )));
    }

    let mut curve = Vec::with_capacity(cfg.steps);
    let mut g_k = f.clone();
    for k in 1..=cfg.steps {
        g_k = markov_apply(g, &g_k);
        let inner: f64 = g_k.iter().zip(&f).zip(&degree).map(|((a, b), &d)| d as f64 * a * b).sum();
        curve.push((inner / norm2).abs().powf(1.0 / k as f64));
    }

    let op = MarkovOperator::new(g)?;
    let new_radius = lanczos(&op, &fiber_basis(&sample), Selection::LargestMagnitude(1), &cfg.lanczos)?
        .values
        .first()
        .map_or(0.0, |v| v.abs());
    let target = cover_target(h, phi, cfg.half_steps)?;
    let reference = cfg.rho_reference.unwrap_or(target.rho_hat);

    let mut report = ExperimentReport::new("relative_ramanujan", cfg.seed);
    report.param("base_vertices", h.vertex_count());
    report.param("base_edges", h.edges());
    report.param("n", cfg.n);
    report.param("block_radius", cfg.block_radius);
    report.param("label_seed", cfg.label_seed);
    report.param("steps", cfg.steps);
    report.param("factor", cfg.factor);
    report.param("rho_reference", reference);
    report.param("margin", cfg.margin);
    report.param("k_min", cfg.k_min);
    report.param("rayleigh_slack", cfg.rayleigh_slack);
    report.param("half_steps", cfg.half_steps);
    report.param("lanczos", cfg.lanczos);
    report.stat("curve", &curve);
    report.stat("new_radius", new_radius);
    report.stat("rho_hat", target.rho_hat);
    report.stat("types", type_index.len());
    report.stat("projected_norm", norm2.sqrt());
    report.stat("raw_norm", raw_norm);

    let late: Vec<f64> = curve.iter().enumerate().filter(|(i, _)| i + 1 >= cfg.k_min).map(|(_, c)| *c).collect();
    let late_max = late.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let all_max = curve.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    report.verdict(
        "curve_below_reference",
        &["rho_reference", "margin", "k_min"],
        late.is_empty() || late_max <= reference + cfg.margin,
        finite(late_max),
    );
    report.verdict("curve_below_new_radius", &["rayleigh_slack"], all_max <= new_radius + cfg.rayleigh_slack, all_max);
    report.plot("rayleigh_curve", (1..=cfg.steps).map(|k| k as f64).collect(), curve.clone());
    report.note(
        "Finite proxy: the relative Ramanujan property concerns an infinite measure space; this report \
         checks the Rayleigh curve of one projected block factor on one finite lift",
    );
    for (k, c) in curve.iter().enumerate() {
        report.trial(cfg.seed, serde_json::json!({ "k": k + 1, "curve": c }));
    }
    Ok(report.finish())
}
