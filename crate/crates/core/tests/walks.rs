mod common;

use liftlab::graph::{ball, MultiGraph};
use liftlab::random::{ugw_ball, DegreeDistribution};
use liftlab::spectral::full_spectrum;
use liftlab::voltage::{cover_ball, VoltageAssignment};
use liftlab::walks::{
    annealed_rho_estimate, mc_walk, quenched_rho_estimate, return_probabilities_ball, return_probabilities_graph,
    supermultiplicativity_check, WalkOptions,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

/// `p_{2n}` on the `d`-regular tree through the birth-death chain of the
/// distance to the root.
fn tree_returns(d: i128, half_steps: usize) -> Vec<Ratio<i128>> {
    let steps = 2 * half_steps;
    let mut mass = vec![Ratio::from_integer(0); steps + 2];
    mass[0] = Ratio::from_integer(1);
    let mut out = Vec::new();
    for k in 1..=steps {
        let mut next = vec![Ratio::from_integer(0); steps + 2];
        for r in 0..=steps {
            let m = mass[r];
            if m == Ratio::from_integer(0) {
                continue;
            }
            if r == 0 {
                next[1] += m;
            } else {
                next[r + 1] += m * Ratio::new(d - 1, d);
                next[r - 1] += m * Ratio::new(1, d);
            }
        }
        mass = next;
        if k % 2 == 0 {
            out.push(mass[0]);
        }
    }
    out
}

fn big(r: Ratio<i128>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

#[test]
fn t4_small_values() {
    let b = common::regular_tree_ball(4, 4);
    let s = return_probabilities_ball(&b, 4, WalkOptions::default()).unwrap();
    assert_eq!(s.exact_p(1).unwrap(), &big(Ratio::new(1, 4)));
    assert_eq!(s.exact_p(2).unwrap(), &big(Ratio::new(7, 64)));
    let oracle = tree_returns(4, 4);
    assert_eq!(s.exact_p(4).unwrap(), &big(oracle[3]));
}

#[test]
fn tree_balls_match_the_distance_chain() {
    for (d, n) in [(3, 12), (4, 10), (5, 7), (6, 6)] {
        let b = common::regular_tree_ball(d, n);
        let s = return_probabilities_ball(&b, n, WalkOptions::default()).unwrap();
        let oracle = tree_returns(d as i128, n);
        for k in 1..=n {
            assert_eq!(s.exact_p(k), Some(&big(oracle[k - 1])), "d={d} 2n={} {}", 2 * k, s.origin);
        }
    }
}

#[test]
fn truncation_is_exact() {
    // A radius-N ball carries p_2, ..., p_2N of the whole graph.
    for (i, g) in common::random_corpus(15, 5, 40, 8).into_iter().enumerate() {
        let g = common::sprinkle_multi_edges(&g, 3, i as u64);
        let n = 6;
        let full = return_probabilities_graph(&g, 0, n, WalkOptions::default()).unwrap();
        let b = ball(&g, 0, n).unwrap();
        let part = return_probabilities_ball(&b, n, WalkOptions::default()).unwrap();
        assert_eq!(full.exact, part.exact);
    }
    let b = common::regular_tree_ball(4, 3);
    assert!(return_probabilities_ball(&b, 4, WalkOptions::default()).is_err());
}

#[test]
fn transitive_graphs_match_the_spectral_trace() {
    for (name, g) in common::transitive_corpus() {
        let spec = full_spectrum(&g).unwrap();
        let s = return_probabilities_graph(&g, 0, 8, WalkOptions::default()).unwrap();
        for n in 1..=8 {
            let trace: f64 = spec.values.iter().map(|l| l.powi(2 * n as i32)).sum::<f64>() / spec.values.len() as f64;
            assert!((s.p(n) - trace).abs() < 1e-12, "{name} 2n={}", 2 * n);
        }
    }
}

#[test]
fn float_and_exact_paths_agree() {
    let h = common::theta();
    let c = cover_ball(&h, &VoltageAssignment::free_on_edges(&h), 1, 10).unwrap();
    let e = return_probabilities_ball(&c.ball, 10, WalkOptions::default()).unwrap();
    let f = return_probabilities_ball(&c.ball, 10, WalkOptions::floats()).unwrap();
    assert!(f.exact.is_none());
    for (a, b) in e.values.iter().zip(&f.values) {
        assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-300));
    }
}

#[test]
fn monte_carlo_within_four_standard_errors() {
    let g = MultiGraph::petersen().unwrap();
    let steps = 10;
    let s = return_probabilities_graph(&g, 0, steps / 2, WalkOptions::default()).unwrap();
    let walkers = 200_000;
    let mc = mc_walk(&g, 0, steps, walkers, 42).unwrap();
    for n in 1..=steps / 2 {
        let freq = mc.frequencies[2 * n - 1];
        let se = mc.standard_errors[2 * n - 1].max(1.0 / walkers as f64);
        assert!((freq - s.p(n)).abs() <= 4.0 * se, "2n={}: {freq} vs {}", 2 * n, s.p(n));
    }
    assert_eq!(mc.frequencies[0], 0.0);
}

#[test]
fn supermultiplicativity_on_irregular_graphs() {
    for (name, g) in common::irregular_corpus() {
        for root in 0..g.vertex_count() {
            let s = return_probabilities_graph(&g, root, 12, WalkOptions::default()).unwrap();
            let r = supermultiplicativity_check(&s);
            assert!(r.holds && r.exact, "{name}@{root}: {:?}", r.violation);
        }
    }
}

#[test]
fn quenched_estimate_stays_below_tree_value() {
    let b = common::regular_tree_ball(3, 14);
    let s = return_probabilities_ball(&b, 14, WalkOptions::default()).unwrap();
    let q = quenched_rho_estimate(&s).unwrap();
    assert!(q.estimate < 2.0 * 2f64.sqrt() / 3.0);
    assert!(q.curve.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn annealed_mixture_is_reproducible() {
    let dist = DegreeDistribution::from_json(r#"{"3": 0.5, "4": 0.5}"#).unwrap();
    let run = |seed| {
        annealed_rho_estimate(|rng| liftlab::random::ugw_ball_with(&dist, 6, rng), 6, 30, seed, WalkOptions::default())
            .unwrap()
    };
    let (a, b) = (run(5), run(5));
    assert_eq!(a.mean_p, b.mean_p);
    assert!(a.band.0 <= a.estimate && a.estimate <= a.band.1);
    assert!(a.estimate >= a.max_quenched - 0.05);
    let b = ugw_ball(&dist, 3, 0).unwrap();
    assert_eq!(b.radius, 3);
    assert!(b.dist.iter().all(|&r| r <= 3));
}

#[test]
fn series_serialization() {
    let s = return_probabilities_graph(&MultiGraph::cycle(4).unwrap(), 0, 2, WalkOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
    assert_eq!(v["exact"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(s.to_csv().lines().next(), Some("two_n,p,estimate"));
}
