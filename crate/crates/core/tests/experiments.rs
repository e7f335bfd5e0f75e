mod common;

use liftlab::experiments::{
    alon_boppana_experiment, bordenave_collins_experiment, config_model_experiment, cover_target,
    fraczyk_decoration_experiment, friedman_experiment, relative_ramanujan_rayleigh, AlonBoppanaConfig, BlockFactor,
    BordenaveCollinsConfig, ConfigModelConfig, ExperimentReport, FraczykConfig, FriedmanConfig,
    RelativeRamanujanConfig,
};
use liftlab::graph::MultiGraph;
use liftlab::random::DegreeDistribution;
use liftlab::spectral::tree_rho;
use liftlab::voltage::VoltageAssignment;
use liftlab::Error;

fn assert_well_formed(r: &ExperimentReport) {
    assert!(r.thresholds_present(), "{}: verdict thresholds missing from parameters", r.experiment);
    assert_eq!(r.trials.len(), r.trial_seeds.len());
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    for key in ["experiment", "parameters", "seed", "trial_seeds", "trials", "summary", "verdicts", "notes"] {
        assert!(v.get(key).is_some(), "{}: missing {key}", r.experiment);
    }
    assert!(r.to_csv().starts_with("trial_seed"));
}

#[test]
fn small_runs_are_well_formed() {
    let bouquet = MultiGraph::bouquet(2).unwrap();
    let free = VoltageAssignment::free_on_edges(&bouquet);
    let dist = DegreeDistribution::from_json(r#"{"3": 0.5, "4": 0.5}"#).unwrap();
    let mut cm = ConfigModelConfig::new(dist);
    cm.n = 200;
    cm.trials = 2;
    cm.half_steps = 5;
    cm.ugw_samples = 10;
    let reports = vec![
        alon_boppana_experiment(&AlonBoppanaConfig { sizes: vec![50, 200], trials: 2, ..Default::default() }).unwrap(),
        friedman_experiment(&FriedmanConfig { n: 100, trials: 3, ..Default::default() }).unwrap(),
        bordenave_collins_experiment(
            &bouquet,
            &free,
            &BordenaveCollinsConfig { sizes: vec![40], trials: 2, half_steps: 5, ..Default::default() },
        )
        .unwrap(),
        relative_ramanujan_rayleigh(
            &bouquet,
            &free,
            &RelativeRamanujanConfig { n: 100, half_steps: 5, ..Default::default() },
        )
        .unwrap(),
        config_model_experiment(&cm).unwrap(),
        fraczyk_decoration_experiment(&FraczykConfig { corpus_size: 4, max_vertices: 5, ..Default::default() })
            .unwrap(),
    ];
    for r in &reports {
        assert_well_formed(r);
    }
    assert!(reports[0].verdict_named("min_rho_n50").is_none());
    assert!(reports[0].verdict_named("min_rho_n200").is_some());
}

#[test]
fn huge_epsilon_accepts_everything() {
    let r = friedman_experiment(&FriedmanConfig { n: 100, trials: 5, epsilon: 2.0, seed: 1, ..Default::default() })
        .unwrap();
    assert_eq!(r.summary["fraction"], 1.0);
    assert!(r.passed());
}

#[test]
fn odd_degree_sum_is_rejected() {
    let cfg = FriedmanConfig { d: 3, n: 101, ..Default::default() };
    assert!(matches!(friedman_experiment(&cfg), Err(Error::OddDegreeSum(303))));
}

#[test]
fn constant_block_factor_is_degenerate() {
    let h = MultiGraph::bouquet(2).unwrap();
    let phi = VoltageAssignment::free_on_edges(&h);
    let cfg = RelativeRamanujanConfig { n: 100, factor: BlockFactor::Constant, half_steps: 4, ..Default::default() };
    assert!(matches!(relative_ramanujan_rayleigh(&h, &phi, &cfg), Err(Error::DegenerateBlockFactor(_))));
    // On a regular lift all balls of one radius agree, so type-only
    // factors vanish too.
    let cfg = RelativeRamanujanConfig { factor: BlockFactor::TypeOnly, block_radius: 1, ..cfg };
    assert!(matches!(relative_ramanujan_rayleigh(&h, &phi, &cfg), Err(Error::DegenerateBlockFactor(_))));
    let cfg = RelativeRamanujanConfig { factor: BlockFactor::RandomCosine, ..cfg };
    assert!(relative_ramanujan_rayleigh(&h, &phi, &cfg).is_ok());
}

#[test]
fn trivial_voltage_new_spectrum_matches_the_base() {
    let h = MultiGraph::petersen().unwrap();
    let trivial = VoltageAssignment::trivial(&h, 1);
    let cfg = BordenaveCollinsConfig { sizes: vec![5, 20], trials: 2, half_steps: 4, ..Default::default() };
    let r = bordenave_collins_experiment(&h, &trivial, &cfg).unwrap();
    for t in &r.trials {
        assert!(t["hausdorff_new"].as_f64().unwrap() < 1e-9);
        assert!(t["hausdorff_full"].as_f64().unwrap() < 1e-9);
    }
    let target = cover_target(&h, &trivial, 4).unwrap();
    assert!(target.exact.is_some());
}

#[test]
fn free_cover_target_estimates_the_tree_value() {
    let h = MultiGraph::bouquet(2).unwrap();
    let t = cover_target(&h, &VoltageAssignment::free_on_edges(&h), 10).unwrap();
    assert!(t.exact.is_none());
    assert!(t.rho_hat < tree_rho(4).unwrap() && t.rho_hat > 0.7);
}

#[test]
fn all_one_labels_keep_the_cheeger_constant() {
    let r = fraczyk_decoration_experiment(&FraczykConfig {
        corpus_size: 10,
        max_vertices: 8,
        label_range: 1,
        seed: 4,
        ..Default::default()
    })
    .unwrap();
    for t in &r.trials {
        assert_eq!(t["h_base"], t["h_decorated"]);
        assert_eq!(t["holds"], true);
    }
    assert!(r.passed());
}

#[test]
fn decoration_witness_is_reported() {
    let r = fraczyk_decoration_experiment(&FraczykConfig {
        corpus_size: 5,
        max_vertices: 4,
        seed: 2,
        ..Default::default()
    })
    .unwrap();
    let k2 = &r.summary["k2_max_labels"];
    assert_eq!(k2["h_base"], "1");
    assert_eq!(k2["h_decorated"], "1/11");
    assert_eq!(k2["holds"], false);
    assert!(!r.notes.is_empty());
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let cfg = AlonBoppanaConfig { sizes: vec![100], trials: 4, seed: 8, ..Default::default() };
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let a = one.install(|| alon_boppana_experiment(&cfg).unwrap().to_json());
    let b = three.install(|| alon_boppana_experiment(&cfg).unwrap().to_json());
    assert_eq!(a, b);
}
