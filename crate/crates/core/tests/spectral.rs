mod common;

use liftlab::graph::MultiGraph;
use liftlab::random::{phi_random_lift, random_regular};
use liftlab::spectral::{
    extreme_eigenvalues, full_spectrum, hausdorff_distance, lanczos, markov_apply, new_spectrum, nontrivial_radius,
    pullback, tree_rho, CompactSet, LanczosConfig, MarkovOperator, NewSpectrumMode, Selection,
};
use liftlab::voltage::VoltageAssignment;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn known_spectra() {
    let n = 8;
    let c = full_spectrum(&MultiGraph::cycle(n).unwrap()).unwrap();
    let mut expected: Vec<f64> = (0..n).map(|k| (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()).collect();
    expected.sort_by(f64::total_cmp);
    assert!(c.values.iter().zip(&expected).all(|(a, b)| close(*a, *b, 1e-10)));

    let k5 = full_spectrum(&MultiGraph::complete(5).unwrap()).unwrap();
    assert!(close(k5.values[4], 1.0, 1e-12));
    assert!(k5.values[..4].iter().all(|&x| close(x, -0.25, 1e-12)));

    let b = full_spectrum(&MultiGraph::bouquet(1).unwrap()).unwrap();
    assert_eq!(b.values.len(), 1);
    assert!(close(b.values[0], 1.0, 1e-12));
}

#[test]
fn spectra_lie_in_the_unit_interval_and_top_is_one() {
    for g in common::random_corpus(30, 2, 30, 2) {
        let s = full_spectrum(&g).unwrap();
        assert!(close(*s.values.last().unwrap(), 1.0, 1e-10));
        assert!(s.values.iter().all(|&x| (-1.0 - 1e-10..=1.0 + 1e-10).contains(&x)));
    }
}

#[test]
fn lanczos_agrees_with_dense_at_500_vertices() {
    let cfg = LanczosConfig::default();
    for seed in 0..3 {
        let g = random_regular(500, 4, seed).unwrap();
        let dense = full_spectrum(&g).unwrap();
        let v = &dense.values;
        let expected = v[0].abs().max(v[v.len() - 2].abs());
        let rho = nontrivial_radius(&g, &cfg).unwrap();
        assert!(close(rho, expected, 1e-8), "seed {seed}: {rho} vs {expected}");

        let op = MarkovOperator::new(&g).unwrap();
        let both = lanczos(&op, &[op.stationary_direction()], Selection::BothEnds, &cfg).unwrap();
        assert!(close(both.values[0], v[0], 1e-8));
        assert!(close(both.values[1], v[v.len() - 2], 1e-8));

        let top = extreme_eigenvalues(&g, 3, None, &cfg).unwrap();
        let mut by_mag = v.clone();
        by_mag.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
        for (a, b) in top.iter().zip(&by_mag) {
            assert!(close(a.abs(), b.abs(), 1e-8));
        }
    }
}

#[test]
fn lanczos_new_extremes_match_dense_new_spectrum() {
    let h = common::theta();
    let phi = VoltageAssignment::free_on_edges(&h);
    let s = phi_random_lift(&h, &phi, 150, 4).unwrap();
    let dense = new_spectrum(&s, NewSpectrumMode::Dense).unwrap();
    let ext = new_spectrum(
        &s,
        NewSpectrumMode::Extremes { selection: Selection::BothEnds, config: LanczosConfig::default() },
    )
    .unwrap();
    assert!(close(ext.values[0], dense.values[0], 1e-8));
    assert!(close(ext.values[1], *dense.values.last().unwrap(), 1e-8));
}

#[test]
fn pullback_preserves_eigenvectors() {
    // The base eigenvector of C4 for eigenvalue 0 pulls back to an
    // eigenvector of the lift with the same eigenvalue.
    let h = MultiGraph::cycle(4).unwrap();
    let phi = VoltageAssignment::free_on_edges(&h);
    let s = phi_random_lift(&h, &phi, 6, 1).unwrap();
    for (f, lambda) in [(vec![1.0, 0.0, -1.0, 0.0], 0.0), (vec![1.0, -1.0, 1.0, -1.0], -1.0)] {
        assert_eq!(markov_apply(&h, &f), f.iter().map(|x| lambda * x).collect::<Vec<_>>());
        let up = pullback(&f, &s);
        let image = markov_apply(&s.lift, &up);
        assert!(image.iter().zip(&up).all(|(a, b)| close(*a, lambda * b, 1e-12)));
    }
}

#[test]
fn hausdorff_distance_basics() {
    let a = CompactSet::from_intervals([(-0.5, 0.5)]);
    let b = CompactSet::from_points(&[-0.5, 0.0, 0.5]);
    assert!(close(hausdorff_distance(&a, &b).unwrap(), 0.25, 1e-15));
    assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    let c = CompactSet::interval(0.9, 1.0);
    assert!(close(hausdorff_distance(&a, &c).unwrap(), 1.4, 1e-15));
    assert!(hausdorff_distance(&a, &CompactSet::from_points(&[])).is_err());
}

#[test]
fn tree_rho_values() {
    assert!(close(tree_rho(4).unwrap(), 3f64.sqrt() / 2.0, 1e-15));
    assert!(close(tree_rho(3).unwrap(), 2.0 * 2f64.sqrt() / 3.0, 1e-15));
    assert_eq!(tree_rho(2).unwrap(), 1.0);
    assert!(tree_rho(1).is_err());
}
