mod common;

use liftlab::graph::{cheeger_constant, MultiGraph};
use liftlab::random::{
    configuration_model, decorate_with_paths, decorated_cheeger, random_regular, random_regular_with, ugw_ball,
    DecorationLabeling, DegreeDistribution, PairingOptions,
};
use liftlab::Error;

#[test]
fn pairing_loop_and_multi_edge_means() {
    // For the pairing model with d = 4 the loop count is asymptotically
    // Poisson((d-1)/2) and the parallel-pair count Poisson((d-1)^2/4).
    let trials = 400;
    let (mut loops, mut multis) = (0usize, 0usize);
    for seed in 0..trials {
        let g = random_regular(1000, 4, seed).unwrap();
        loops += g.loop_count();
        multis += g.multi_edge_count();
    }
    let loop_mean = loops as f64 / trials as f64;
    let multi_mean = multis as f64 / trials as f64;
    // Standard errors are about 0.06 and 0.08.
    assert!((loop_mean - 1.5).abs() < 0.25, "loops {loop_mean}");
    assert!((multi_mean - 2.25).abs() < 0.35, "multi-edges {multi_mean}");
}

#[test]
fn pairing_preserves_degrees() {
    let degrees = DegreeDistribution::from_json(r#"{"3": 0.25, "5": 0.75}"#).unwrap().degree_sequence(200);
    let g = configuration_model(&degrees, 7).unwrap();
    assert_eq!(g.degrees(), degrees);
    assert!(matches!(configuration_model(&[3, 3, 3], 0), Err(Error::OddDegreeSum(9))));
}

#[test]
fn simple_rejection_gives_simple_graphs() {
    let opts = PairingOptions { simple: true, ..Default::default() };
    for seed in 0..10 {
        let g = random_regular_with(100, 3, seed, opts).unwrap();
        assert!(g.is_simple());
    }
    let hopeless = PairingOptions { simple: true, max_attempts: 3 };
    assert!(matches!(
        random_regular_with(4, 3, 1, hopeless).map(|g| g.is_simple()),
        Ok(true) | Err(Error::RejectionLimit(3))
    ));
}

#[test]
fn ugw_root_degree_mean() {
    let dist = DegreeDistribution::from_json(r#"{"3": 0.5, "4": 0.5}"#).unwrap();
    let samples = 4000;
    let total: usize = (0..samples).map(|s| ugw_ball(&dist, 1, s).unwrap().ambient_degree[0]).sum();
    let mean = total as f64 / samples as f64;
    // Standard error 0.5 / sqrt(4000) < 0.008.
    assert!((mean - 3.5).abs() < 0.04, "{mean}");
    assert!((dist.mean() - 3.5).abs() < 1e-15);
}

#[test]
fn ugw_children_follow_the_offspring_law() {
    let dist = DegreeDistribution::from_json(r#"{"3": 0.5, "5": 0.5}"#).unwrap();
    let b = ugw_ball(&dist, 4, 3).unwrap();
    for x in 0..b.vertex_count() {
        assert!(dist.support().contains(&b.ambient_degree[x]));
        if b.dist[x] < 4 {
            assert_eq!(b.graph.degree(x), b.ambient_degree[x]);
        }
    }
    assert!(b.graph.is_connected());
    assert_eq!(b.graph.edge_count() + 1, b.vertex_count());
}

#[test]
fn distribution_validation() {
    assert!(DegreeDistribution::from_json(r#"{"2": 1.0}"#).is_err());
    assert!(DegreeDistribution::from_json(r#"{"3": 0.5, "4": 0.4}"#).is_err());
    assert!(DegreeDistribution::from_json(r#"{"3": -0.5, "4": 1.5}"#).is_err());
    assert!(DegreeDistribution::regular(4).unwrap().support() == [4]);
}

#[test]
fn decoration_structure_and_cheeger() {
    let g = MultiGraph::cycle(5).unwrap();
    let labels = DecorationLabeling::new(vec![1, 2, 3, 1, 4]).unwrap();
    let d = decorate_with_paths(&g, &labels).unwrap();
    assert_eq!(d.graph.vertex_count(), 5 + 1 + 2 + 3);
    assert_eq!(d.graph.edge_count(), 5 + 6);
    assert_eq!(d.anchor[5], 1);
    assert_eq!(d.depth[10], 3);
    assert_eq!(decorated_cheeger(&g, &labels).unwrap(), cheeger_constant(&d.graph).unwrap().value);

    let ones = DecorationLabeling::new(vec![1; 5]).unwrap();
    assert_eq!(decorated_cheeger(&g, &ones).unwrap(), cheeger_constant(&g).unwrap().value);
}

#[test]
fn decorated_cheeger_matches_enumeration_on_a_corpus() {
    let mut r = common::rng(77);
    for (i, g) in common::random_corpus(25, 2, 6, 13).iter().enumerate() {
        let g = common::sprinkle_multi_edges(g, i % 2, i as u64);
        let labels = DecorationLabeling::uniform(g.vertex_count(), 3, &mut r);
        let d = decorate_with_paths(&g, &labels).unwrap();
        if d.graph.vertex_count() > 16 {
            continue;
        }
        assert_eq!(decorated_cheeger(&g, &labels).unwrap(), cheeger_constant(&d.graph).unwrap().value);
    }
}
