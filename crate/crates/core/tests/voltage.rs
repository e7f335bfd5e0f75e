mod common;

use liftlab::graph::{ball, rooted_isomorphic, MultiGraph};
use liftlab::random::{phi_random_lift, random_permutation};
use liftlab::voltage::{
    cover_ball, derived_lift, derived_lift_n, evaluate_word, is_reduced, universal_cover_ball, Permutation,
    VoltageAssignment, Word,
};
use proptest::prelude::*;

const RANK: usize = 3;

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![1i32..=RANK as i32, -(RANK as i32)..=-1], 0..12)
        .prop_map(|l| Word::from_letters(RANK, &l).unwrap())
}

fn perms(seed: u64, n: usize) -> Vec<Permutation> {
    let mut r = common::rng(seed);
    (0..RANK).map(|_| random_permutation(n, &mut r)).collect()
}

proptest! {
    #[test]
    fn words_form_a_group(a in arb_word(), b in arb_word(), c in arb_word()) {
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert!(is_reduced(ab_c.letters()));
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_empty());
        prop_assert_eq!(a.multiply(&Word::identity(RANK)).unwrap(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_word(), b in arb_word(), seed in any::<u64>()) {
        let s = perms(seed, 7);
        let lhs = evaluate_word(&a.multiply(&b).unwrap(), &s).unwrap();
        let rhs = evaluate_word(&a, &s).unwrap().compose(&evaluate_word(&b, &s).unwrap());
        prop_assert_eq!(lhs, rhs);
        let inv = evaluate_word(&a.inverse(), &s).unwrap();
        prop_assert_eq!(inv, evaluate_word(&a, &s).unwrap().inverse());
    }
}

#[test]
fn generators_evaluate_to_their_permutations() {
    let s = perms(9, 5);
    for i in 1..=RANK {
        assert_eq!(evaluate_word(&Word::generator(i, RANK).unwrap(), &s).unwrap(), s[i - 1]);
    }
    assert_eq!(evaluate_word(&Word::identity(RANK), &s).unwrap(), Permutation::identity(5));
}

#[test]
fn tree_voltages_give_the_universal_cover() {
    let mut bases: Vec<MultiGraph> = common::irregular_corpus().into_iter().map(|x| x.1).collect();
    bases.push(MultiGraph::petersen().unwrap());
    bases.push(MultiGraph::bouquet(2).unwrap());
    for h in &bases {
        let phi = common::tree_voltage(h);
        for v in 0..h.vertex_count().min(3) {
            for r in 0..4 {
                let c = cover_ball(h, &phi, v, r).unwrap();
                let u = universal_cover_ball(h, v, r).unwrap();
                assert!(rooted_isomorphic(&c.ball, &u), "{:?} v={v} r={r}", h.edges());
            }
        }
    }
}

#[test]
fn trivial_voltage_gives_the_base() {
    for (name, h) in common::transitive_corpus().into_iter().chain(common::irregular_corpus()) {
        let phi = VoltageAssignment::trivial(&h, 1);
        for r in 0..3 {
            let c = cover_ball(&h, &phi, 0, r).unwrap();
            assert!(rooted_isomorphic(&c.ball, &ball(&h, 0, r).unwrap()), "{name} r={r}");
            assert!(c.words.iter().all(Word::is_empty));
        }
    }
}

#[test]
fn cyclic_voltage_on_a_cycle_unrolls_it() {
    let c3 = MultiGraph::cycle(3).unwrap();
    let w = vec![Word::identity(1), Word::identity(1), Word::generator(1, 1).unwrap()];
    let phi = VoltageAssignment::from_edge_words(&c3, 1, w).unwrap();
    let c = cover_ball(&c3, &phi, 0, 5).unwrap();
    assert_eq!(c.ball.vertex_count(), 11);
    assert_eq!(c.ball.graph.edge_count(), 10);
}

#[test]
fn cover_ball_projects_onto_the_base() {
    let h = common::theta();
    let phi = VoltageAssignment::free_on_edges(&h);
    let c = cover_ball(&h, &phi, 0, 4).unwrap();
    let b = &c.ball;
    for x in 0..b.vertex_count() {
        assert_eq!(b.ambient_degree[x], h.degree(b.origin[x]));
        if b.dist[x] < 4 {
            assert_eq!(b.graph.degree(x), h.degree(b.origin[x]));
        }
        for y in b.graph.neighbors(x) {
            assert!(h.neighbors(b.origin[x]).any(|z| z == b.origin[y]));
        }
    }
}

#[test]
fn random_lifts_are_coverings() {
    for (i, g) in common::random_corpus(20, 2, 8, 3).iter().enumerate() {
        let g = common::sprinkle_multi_edges(g, 2, i as u64);
        let phi = VoltageAssignment::free_on_edges(&g);
        for n in [1, 2, 5, 13] {
            let s = phi_random_lift(&g, &phi, n, i as u64).unwrap();
            assert!(s.is_covering());
            assert_eq!(s.lift.vertex_count(), n * g.vertex_count());
            assert_eq!(s.lift.edge_count(), n * g.edge_count());
            for x in 0..s.lift.vertex_count() {
                assert_eq!(s.lift.degree(x), g.degree(s.covering[x]));
            }
        }
    }
}

#[test]
fn identity_permutations_give_disjoint_copies() {
    let h = MultiGraph::petersen().unwrap();
    let phi = VoltageAssignment::free_on_edges(&h);
    let s = derived_lift(&h, &phi, vec![Permutation::identity(3); phi.rank()]).unwrap();
    assert!(!s.lift.is_connected());
    let tree = derived_lift_n(
        &MultiGraph::path(4).unwrap(),
        &VoltageAssignment::trivial(&MultiGraph::path(4).unwrap(), 0),
        vec![],
        2,
    )
    .unwrap();
    assert_eq!(tree.lift.vertex_count(), 8);
    assert!(derived_lift(&h, &phi, vec![Permutation::identity(3)]).is_err());
}

#[test]
fn voltage_json_round_trip() {
    let h = common::theta();
    let phi = common::tree_voltage(&h);
    let back = VoltageAssignment::from_json(&h, &phi.to_json(&h)).unwrap();
    assert_eq!(back.rank(), phi.rank());
    for e in 0..phi.half_edge_count() {
        assert_eq!(back.volt(e), phi.volt(e));
    }
}
