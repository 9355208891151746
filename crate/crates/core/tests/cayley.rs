mod common;

use std::collections::BTreeSet;

use cayley2dt::cayley::{automorphism_vertex_action, right_translation};
use cayley2dt::perm::{orbits_on_ordered_pairs, Regularity};
use cayley2dt::{build_cayley, GroupElement, GroupParams};
use common::{bfs, oracle_word};
use proptest::prelude::*;

#[test]
fn sphere_one_is_connection_set() {
    for p in [3, 5, 7] {
        let ctx = build_cayley(GroupParams::new(p).unwrap()).unwrap();
        assert_eq!(ctx.sphere_elements(1).unwrap(), ctx.params.connection_set());
    }
}

#[test]
fn sphere_two_formula() {
    for p in [3, 5, 7] {
        let pr = GroupParams::new(p).unwrap();
        let ctx = build_cayley(pr).unwrap();
        let mut expected = BTreeSet::new();
        for i in 1..p as i64 {
            for j in 1..p as i64 {
                expected.insert(oracle_word(&pr, &[('b', j), ('a', i)]));
                expected.insert(oracle_word(&pr, &[('a', j), ('b', i)]));
            }
        }
        let got: BTreeSet<GroupElement> = ctx.sphere_elements(2).unwrap().into_iter().collect();
        assert_eq!(got, expected);
        assert_eq!(got.len() as u64, 2 * (p - 1) * (p - 1));
    }
    // p = 3 in normal form: {(i, j, 0)} ∪ {(i, j, −ij)}
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let mut expected = BTreeSet::new();
    for i in 1..3i64 {
        for j in 1..3i64 {
            expected.insert(pr.element(i, j, 0));
            expected.insert(pr.element(i, j, -i * j));
        }
    }
    let got: BTreeSet<GroupElement> = ctx.sphere_elements(2).unwrap().into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn sphere_three_contains_ac_and_ba2c() {
    for p in [3, 5, 7] {
        let pr = GroupParams::new(p).unwrap();
        let ctx = build_cayley(pr).unwrap();
        let d = bfs(&ctx.gamma, 0);
        let ac = oracle_word(&pr, &[('b', -1), ('a', 1), ('b', 1)]);
        assert_eq!(ac, oracle_word(&pr, &[('a', 1), ('c', 1)]));
        let ba2c = oracle_word(&pr, &[('a', 1), ('b', 1), ('a', 1)]);
        assert_eq!(ba2c, oracle_word(&pr, &[('b', 1), ('a', 2), ('c', 1)]));
        assert_eq!(d[pr.index(ac)], 3);
        assert_eq!(d[pr.index(ba2c)], 3);
        let s3 = ctx.sphere_elements(3).unwrap();
        assert!(s3.contains(&ac) && s3.contains(&ba2c));
    }
    let pr = GroupParams::new(3).unwrap();
    let s3 = build_cayley(pr).unwrap().sphere_elements(3).unwrap();
    assert!(s3.contains(&GroupElement::new(1, 0, 1)));
    assert!(s3.contains(&GroupElement::new(2, 1, 2)));
}

#[test]
fn spheres_agree_with_bfs() {
    for p in [3, 5] {
        let ctx = build_cayley(GroupParams::new(p).unwrap()).unwrap();
        let d = bfs(&ctx.gamma, 0);
        let dp = ctx.gamma.distance_partition(0).unwrap();
        for (i, sphere) in dp.spheres.iter().enumerate() {
            assert!(sphere.iter().all(|&v| d[v] == i));
        }
        assert_eq!(
            dp.spheres.iter().map(Vec::len).sum::<usize>(),
            ctx.gamma.n()
        );
    }
}

#[test]
fn right_regular_group_is_regular() {
    for p in [3, 5] {
        let ctx = build_cayley(GroupParams::new(p).unwrap()).unwrap();
        let points: Vec<usize> = (0..ctx.gamma.n()).collect();
        assert_eq!(
            ctx.rg.action_regularity(&points).unwrap(),
            Regularity::Regular
        );
        assert_eq!(ctx.rg.stabilizer(0).unwrap().order().unwrap(), 1);
    }
}

#[test]
fn conjugation_identity_exhaustive_p3() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    for phi in &ctx.aut_gs_maps {
        let act = automorphism_vertex_action(phi, &pr);
        for g in pr.elements() {
            assert_eq!(
                right_translation(g, &pr).conjugate_by(&act),
                right_translation(phi.apply(&pr, g), &pr)
            );
        }
    }
}

#[test]
fn normaliser_orders_and_transitivity() {
    for (p, order) in [(3, 216), (5, 4000), (7, 24696)] {
        let ctx = build_cayley(GroupParams::new(p).unwrap()).unwrap();
        assert_eq!(ctx.n_order, order);
        assert!(ctx.rg.is_normal_in(&ctx.n).unwrap());
        for d in [1, 2] {
            let orbits = orbits_on_ordered_pairs(&ctx.n, ctx.gamma.pairs_at_distance(d)).unwrap();
            assert_eq!(orbits.len(), 1, "p = {p}, distance {d}");
        }
    }
}

#[test]
fn summary_values() {
    let s = build_cayley(GroupParams::new(3).unwrap())
        .unwrap()
        .summary();
    assert_eq!(
        (s.vertices, s.edges, s.valency, s.girth),
        (27, 54, Some(4), Some(3))
    );
    assert_eq!((s.rg_order, s.aut_gs_order, s.n_order), (27, 8, 216));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn aut_gs_actions_preserve_adjacency(p in prop_oneof![Just(3u64), Just(5), Just(7)], pick in 0usize..72) {
        let pr = GroupParams::new(p).unwrap();
        let ctx = build_cayley(pr).unwrap();
        let phi = &ctx.aut_gs_maps[pick % ctx.aut_gs_maps.len()];
        let act = ctx.automorphism_vertex_action(phi).unwrap();
        prop_assert!(ctx.gamma.is_automorphism(&act));
        prop_assert!(act.fixes(0));
    }
}
