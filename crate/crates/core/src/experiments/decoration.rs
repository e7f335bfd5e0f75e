use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{trial_seed, ExperimentReport};
use crate::error::{Error, Result};
use crate::graph::{cheeger_constant, MultiGraph, CHEEGER_BRUTE_FORCE_CAP};
use crate::random::{decorate_with_paths, decorated_cheeger, random_connected_graph, DecorationLabeling};
use crate::spectral::full_spectrum;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FraczykConfig {
    pub corpus_size: usize,
    pub max_vertices: usize,
    pub seed: u64,
    /// Labels are uniform in `1..=label_range`; the bound is `h(G) / label_range`.
    pub label_range: usize,
    /// Probability of each non-tree pair in the random corpus graphs.
    pub extra_edge_probability: f64,
}

impl Default for FraczykConfig {
    fn default() -> Self {
        FraczykConfig { corpus_size: 50, max_vertices: 10, seed: 0, label_range: 6, extra_edge_probability: 0.3 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecorationCase {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<usize>,
    pub decorated_vertices: usize,
    pub h_base: String,
    pub h_decorated: String,
    pub bound: String,
    pub holds: bool,
    /// Agreement with subset enumeration, when the decoration is small
    /// enough to enumerate.
    pub brute_force_agrees: Option<bool>,
    pub gap_base: f64,
    pub gap_decorated: f64,
}

/// Cheeger constants of `g` and of its decoration, compared exactly.
pub fn decoration_case(g: &MultiGraph, labeling: &DecorationLabeling, label_range: usize) -> Result<DecorationCase> {
    if label_range == 0 {
        return Err(Error::invalid("label range must be positive"));
    }
    let h_base = cheeger_constant(g)?.value;
    let h_dec = decorated_cheeger(g, labeling)?;
    let dec = decorate_with_paths(g, labeling)?;
    let brute_force_agrees = (dec.graph.vertex_count() <= CHEEGER_BRUTE_FORCE_CAP)
        .then(|| cheeger_constant(&dec.graph).map(|c| c.value == h_dec))
        .transpose()?;
    let bound = h_base / Ratio::from_integer(label_range as i64);
    Ok(DecorationCase {
        vertices: g.vertex_count(),
        edges: g.edges(),
        labels: labeling.labels.clone(),
        decorated_vertices: dec.graph.vertex_count(),
        h_base: h_base.to_string(),
        h_decorated: h_dec.to_string(),
        bound: bound.to_string(),
        holds: h_dec >= bound,
        brute_force_agrees,
        gap_base: spectral_gap(g)?,
        gap_decorated: spectral_gap(&dec.graph)?,
    })
}

/// `1 - λ_2` of the Markov operator.
fn spectral_gap(g: &MultiGraph) -> Result<f64> {
    let s = full_spectrum(g)?;
    Ok(match s.values.len() {
        0 | 1 => 1.0,
        k => 1.0 - s.values[k - 2],
    })
}

/// Pendant-path decorations of random small graphs against `h(G) / k`.
pub fn fraczyk_decoration_experiment(cfg: &FraczykConfig) -> Result<ExperimentReport> {
    if cfg.max_vertices < 2 || cfg.max_vertices > CHEEGER_BRUTE_FORCE_CAP {
        return Err(Error::invalid(format!(
            "max vertices must lie in 2..={CHEEGER_BRUTE_FORCE_CAP} for exact Cheeger constants"
        )));
    }
    let mut report = ExperimentReport::new("fraczyk_decoration", cfg.seed);
    report.param("corpus_size", cfg.corpus_size);
    report.param("max_vertices", cfg.max_vertices);
    report.param("label_range", cfg.label_range);
    report.param("extra_edge_probability", cfg.extra_edge_probability);
    report.param("cheeger_normalization", "volume");

    let cases: Vec<DecorationCase> = (0..cfg.corpus_size)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, i));
            let n = rng.random_range(2..=cfg.max_vertices);
            let g = random_connected_graph(n, cfg.extra_edge_probability, &mut rng)?;
            let labeling = DecorationLabeling::uniform(n, cfg.label_range, &mut rng);
            decoration_case(&g, &labeling, cfg.label_range)
        })
        .collect::<Result<_>>()?;

    let violations = cases.iter().filter(|c| !c.holds).count();
    let disagreements = cases.iter().filter(|c| c.brute_force_agrees == Some(false)).count();
    report.stat("violations", violations);
    report.stat("brute_force_checked", cases.iter().filter(|c| c.brute_force_agrees.is_some()).count());
    report.stat("brute_force_disagreements", disagreements);

    let k2 = MultiGraph::path(2)?;
    let pair = decoration_case(&k2, &DecorationLabeling::new(vec![cfg.label_range; 2])?, cfg.label_range)?;
    report.stat("k2_max_labels", &pair);
    report.verdict("inequality_holds", &["label_range", "cheeger_normalization"], violations == 0, violations);
    report.verdict("knapsack_matches_enumeration", &["cheeger_normalization"], disagreements == 0, disagreements);

    if violations > 0 || !pair.holds {
        let l = cfg.label_range as i64;
        let path_ratio = Ratio::new(1, (2 * l - 3).max(1));
        report.note(format!(
            "A pendant path with {} edges alone has boundary 1 and volume {}, so h(dec) <= {} whenever some \
             label equals {}; the bound h(G)/{} then fails for every base graph with h(G) > {}",
            l - 1,
            2 * l - 3,
            path_ratio,
            l,
            l,
            path_ratio * Ratio::from_integer(l)
        ));
    }
    report.note(
        "Only the finite ingredient is implemented: decoration plus exact Cheeger comparison. The \
         integer-indexed labels and the Bernoulli pullback live on infinite graphs",
    );
    for (i, c) in cases.into_iter().enumerate() {
        report.trial(trial_seed(cfg.seed, i), c);
    }
    Ok(report.finish())
}
