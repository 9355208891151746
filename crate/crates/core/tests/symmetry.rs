mod common;

use cayley2dt::coset::{build_coset_graph, induced_group_on_sigma};
use cayley2dt::perm::PermGroup;
use cayley2dt::symmetry::{
    check_distance_transitive, check_normal_cayley, check_s_arc_regular, check_s_arc_transitive,
    check_semisymmetric, check_t_distance_transitive, in_same_orbit,
};
use cayley2dt::{automorphism_group, build_cayley, Error, Graph, GroupParams, Permutation};
use common::bfs;
use proptest::prelude::*;
use serde_json::json;

fn pair(w: &serde_json::Value, i: usize) -> Vec<usize> {
    serde_json::from_value(w["pairs"][i].clone()).unwrap()
}

#[test]
fn gamma_two_distance_but_not_three() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let aut = automorphism_group(&ctx.gamma).unwrap();
    assert!(
        check_t_distance_transitive(&ctx.gamma, &aut, 1)
            .unwrap()
            .pass
    );
    assert!(
        check_t_distance_transitive(&ctx.gamma, &aut, 2)
            .unwrap()
            .pass
    );
    let r = check_t_distance_transitive(&ctx.gamma, &aut, 3).unwrap();
    assert!(!r.pass);
    let w = r.witness.unwrap();
    assert_eq!(w["distance"], json!(3));
    assert!(!in_same_orbit(&aut, &pair(&w, 0), &pair(&w, 1)));
    // the specific pairs (1, ac) and (1, ba²c)
    let ac = pr.index(pr.element(1, 0, 1));
    let ba2c = pr.index(pr.element(2, 1, 2));
    assert!(!in_same_orbit(&aut, &[0, ac], &[0, ba2c]));
}

#[test]
fn not_distance_transitive() {
    for p in [3, 5] {
        let ctx = build_cayley(GroupParams::new(p).unwrap()).unwrap();
        let aut = automorphism_group(&ctx.gamma).unwrap();
        assert!(!check_distance_transitive(&ctx.gamma, &aut).unwrap().pass);
    }
}

#[test]
fn gamma_not_two_arc_transitive() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let aut = automorphism_group(&ctx.gamma).unwrap();
    assert!(!check_s_arc_transitive(&ctx.gamma, &aut, 2).unwrap().pass);
    let (a, a2, b) = (
        pr.index(pr.a()),
        pr.index(pr.pow(pr.a(), 2)),
        pr.index(pr.b()),
    );
    let d = bfs(&ctx.gamma, a);
    assert_eq!((d[a2], d[b]), (1, 2));
    assert!(!in_same_orbit(&aut, &[a, 0, a2], &[a, 0, b]));
}

#[test]
fn sigma_arc_transitivity() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let sigma = build_coset_graph(pr).unwrap();
    let n_sigma = induced_group_on_sigma(&sigma, &ctx.n).unwrap();
    assert!(
        check_s_arc_transitive(&sigma.graph, &n_sigma, 1)
            .unwrap()
            .pass
    );
    let aut = automorphism_group(&sigma.graph).unwrap();
    assert!(check_s_arc_transitive(&sigma.graph, &aut, 3).unwrap().pass);
    assert!(!check_s_arc_transitive(&sigma.graph, &aut, 4).unwrap().pass);
}

#[test]
fn sigma_three_arc_regular() {
    for (p, order) in [(3, 216), (5, 4000)] {
        let sigma = build_coset_graph(GroupParams::new(p).unwrap()).unwrap();
        let aut = automorphism_group(&sigma.graph).unwrap();
        let r = check_s_arc_regular(&sigma.graph, &aut, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.actual["group_order"], json!(order));
        assert!(!check_s_arc_regular(&sigma.graph, &aut, 1).unwrap().pass);
    }
}

#[test]
fn semisymmetry() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let sigma = build_coset_graph(pr).unwrap();
    let rg = induced_group_on_sigma(&sigma, &ctx.rg).unwrap();
    let r = check_semisymmetric(&sigma.graph, &rg).unwrap();
    assert!(r.pass);
    assert_eq!(r.detail.unwrap()["vertex_orbits"], json!(2));
    let n = induced_group_on_sigma(&sigma, &ctx.n).unwrap();
    assert!(!check_semisymmetric(&sigma.graph, &n).unwrap().pass);
    let aut = automorphism_group(&ctx.gamma).unwrap();
    assert!(!check_semisymmetric(&ctx.gamma, &aut).unwrap().pass);
}

#[test]
fn normal_cayley() {
    for (p, order) in [(3, 216), (5, 4000)] {
        let ctx = build_cayley(GroupParams::new(p).unwrap()).unwrap();
        let aut = automorphism_group(&ctx.gamma).unwrap();
        let r = check_normal_cayley(&ctx, &aut).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.actual["order"], json!(order));
    }
}

#[test]
fn precondition_errors() {
    let ctx = build_cayley(GroupParams::new(3).unwrap()).unwrap();
    let swap = Permutation::from_fn(27, |x| match x {
        0 => 1,
        1 => 0,
        _ => x,
    })
    .unwrap();
    let bogus = PermGroup::lazy(27, vec![swap]).unwrap();
    assert!(matches!(
        check_t_distance_transitive(&ctx.gamma, &bogus, 1),
        Err(Error::NotAutomorphismGroup(_))
    ));
    assert!(matches!(
        check_t_distance_transitive(&ctx.gamma, &ctx.n, 9),
        Err(Error::OutOfRange { .. })
    ));
}

fn random_graph() -> impl Strategy<Value = Graph> {
    (3usize..8).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.45), n * (n - 1) / 2).prop_map(
            move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monotone_in_s_and_t(g in random_graph()) {
        let aut = automorphism_group(&g).unwrap();
        // with a leaf, an (s-1)-arc need not extend to an s-arc and the
        // implication fails (a path on three vertices is 2-arc- but not
        // 1-arc-transitive)
        let extendable = (0..g.n()).all(|v| g.degree(v) >= 2);
        let mut prev = true;
        for s in 1..=4 {
            match check_s_arc_transitive(&g, &aut, s) {
                Ok(r) => {
                    prop_assert!(!extendable || prev || !r.pass);
                    prop_assert_eq!(r.pass, r.expected.as_ref() == Some(&r.actual));
                    prev = r.pass;
                }
                Err(Error::NoSArcs(_)) => break,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        if let Some(diam) = g.diameter().filter(|&d| d > 0) {
            let mut prev = true;
            for t in 1..=diam {
                let r = check_t_distance_transitive(&g, &aut, t).unwrap();
                prop_assert!(prev || !r.pass);
                if !r.pass {
                    let w = r.witness.clone().unwrap();
                    prop_assert!(!in_same_orbit(&aut, &pair(&w, 0), &pair(&w, 1)));
                }
                prev = r.pass;
            }
        }
    }
}
