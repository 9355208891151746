use std::collections::BTreeSet;

use cayley2dt::coset::{
    build_coset_graph, identify_clique_and_coset_graphs, induced_action_on_sigma,
    induced_group_on_sigma, line_graph_isomorphism, CosetFamily, CosetVertex,
};
use cayley2dt::graph::{clique_graph, maximal_cliques};
use cayley2dt::perm::Permutation;
use cayley2dt::{automorphism_group, build_cayley, GroupElement, GroupParams};

#[test]
fn sigma_shape() {
    for p in [3usize, 5, 7] {
        let sigma = build_coset_graph(GroupParams::new(p as u64).unwrap()).unwrap();
        let g = &sigma.graph;
        assert_eq!(g.n(), 2 * p * p);
        assert_eq!(g.edge_count(), p.pow(3));
        assert_eq!(g.valency(), Some(p));
        assert!(g.is_bipartite() && g.is_connected());
        // no edge inside a family
        for (u, v) in g.edges() {
            assert_ne!(sigma.vertices[u].family, sigma.vertices[v].family);
        }
        // distinct cosets of one family are disjoint
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if sigma.vertices[u].family == sigma.vertices[v].family {
                    assert!(sigma.intersection(u, v).is_empty());
                } else {
                    assert!(sigma.intersection(u, v).len() <= 1);
                }
            }
        }
    }
}

#[test]
fn cliques_are_cosets() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let sigma = build_coset_graph(pr).unwrap();
    let id = identify_clique_and_coset_graphs(&ctx, &sigma).unwrap();
    assert!(id.check.pass);
    let cliques = maximal_cliques(&ctx.gamma);
    let a_clique = vec![0, pr.index(pr.a()), pr.index(pr.pow(pr.a(), 2))];
    let mut sorted = a_clique.clone();
    sorted.sort_unstable();
    let ci = cliques.iter().position(|c| *c == sorted).unwrap();
    assert_eq!(
        sigma.vertices[id.clique_to_coset[ci]],
        CosetVertex {
            family: CosetFamily::A,
            rep: GroupElement::IDENTITY
        }
    );
    let image: BTreeSet<usize> = id.clique_to_coset.iter().copied().collect();
    assert_eq!(image.len(), 18);
}

#[test]
fn clique_graph_matches_coset_graph_p5() {
    let pr = GroupParams::new(5).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let sigma = build_coset_graph(pr).unwrap();
    let id = identify_clique_and_coset_graphs(&ctx, &sigma).unwrap();
    assert_eq!(id.clique_to_coset.len(), 50);
    let cg = clique_graph(&ctx.gamma);
    for (x, y) in cg.edges() {
        assert!(sigma
            .graph
            .is_adjacent(id.clique_to_coset[x], id.clique_to_coset[y]));
    }
    assert_eq!(cg.edge_count(), sigma.graph.edge_count());
}

#[test]
fn line_graph_isomorphism_is_bijective() {
    for p in [3, 5] {
        let pr = GroupParams::new(p).unwrap();
        let ctx = build_cayley(pr).unwrap();
        let sigma = build_coset_graph(pr).unwrap();
        let iso = line_graph_isomorphism(&ctx, &sigma).unwrap();
        assert!(iso.check.pass);
        let image: BTreeSet<usize> = iso.edge_to_element.iter().copied().collect();
        assert_eq!(image.len(), pr.order());
    }
}

#[test]
fn induced_actions() {
    let pr = GroupParams::new(3).unwrap();
    let ctx = build_cayley(pr).unwrap();
    let sigma = build_coset_graph(pr).unwrap();
    let id = Permutation::identity(27);
    assert!(induced_action_on_sigma(&sigma, &id).unwrap().is_identity());

    // R(a) fixes ⟨a⟩ and permutes {⟨b⟩a^i} in one cycle
    let ra = induced_action_on_sigma(&sigma, &ctx.right_translation(pr.a())).unwrap();
    let a0 = sigma.coset_of(CosetFamily::A, pr.identity());
    assert!(ra.fixes(a0));
    let nbrs: Vec<usize> = (0..3u64)
        .map(|i| sigma.coset_of(CosetFamily::B, pr.pow(pr.a(), i)))
        .collect();
    let mut orbit = vec![nbrs[0]];
    while orbit.len() < 4 {
        let next = ra.apply(*orbit.last().unwrap());
        if next == nbrs[0] {
            break;
        }
        orbit.push(next);
    }
    let orbit: BTreeSet<usize> = orbit.into_iter().collect();
    assert_eq!(orbit, nbrs.iter().copied().collect());

    // γ swaps the families
    let [_, _, gamma] = pr.canonical_automorphisms();
    let act = ctx.automorphism_vertex_action(&gamma).unwrap();
    let induced = induced_action_on_sigma(&sigma, &act).unwrap();
    for v in 0..sigma.graph.n() {
        assert_ne!(
            sigma.vertices[v].family,
            sigma.vertices[induced.apply(v)].family
        );
    }
}

#[test]
fn induced_map_is_faithful_and_onto() {
    for p in [3, 5] {
        let pr = GroupParams::new(p).unwrap();
        let ctx = build_cayley(pr).unwrap();
        let sigma = build_coset_graph(pr).unwrap();
        let aut_gamma = automorphism_group(&ctx.gamma).unwrap();
        let induced = induced_group_on_sigma(&sigma, &aut_gamma).unwrap();
        assert_eq!(induced.order().unwrap(), aut_gamma.order().unwrap());
        let aut_sigma = automorphism_group(&sigma.graph).unwrap();
        assert!(induced.same_elements(&aut_sigma).unwrap());
        // kernel: only the identity induces the identity
        let trivial = aut_gamma
            .elements()
            .unwrap()
            .iter()
            .filter(|g| induced_action_on_sigma(&sigma, g).unwrap().is_identity())
            .count();
        assert_eq!(trivial, 1);
    }
}

#[test]
fn coset_labels_in_exports() {
    let sigma = build_coset_graph(GroupParams::new(3).unwrap()).unwrap();
    let dot = sigma.graph.to_dot("sigma");
    assert!(dot.contains("[label=\"A:0.0.0\"]"));
    assert!(dot.contains("[label=\"B:0.0.0\"]"));
    assert_eq!(dot.matches(" -- ").count(), 27);
}
