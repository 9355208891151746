//! The bipartite graph Σ built two ways: as the clique graph of Γ and as
//! the coset graph `Cos(G, ⟨a⟩, ⟨b⟩)`, with the explicit identifications
//! between them and the line-graph isomorphism `L(Σ) ≅ Γ`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cayley::CayleyContext;
use crate::error::{Error, Result};
use crate::graph::{line_graph, maximal_cliques, Graph, VertexLabel};
use crate::group::{GroupElement, GroupParams};
use crate::perm::{PermGroup, Permutation};
use crate::symmetry::CheckResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CosetFamily {
    /// Right cosets `⟨a⟩x`.
    A,
    /// Right cosets `⟨b⟩x`.
    B,
}

/// A right coset of `⟨a⟩` or `⟨b⟩`, identified by its member of minimal
/// vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetVertex {
    pub family: CosetFamily,
    pub rep: GroupElement,
}

impl fmt::Display for CosetVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.family {
            CosetFamily::A => "A",
            CosetFamily::B => "B",
        };
        write!(f, "{tag}:{}", self.rep)
    }
}

/// Σ as a coset graph: vertices `0..p²` are the `⟨a⟩`-cosets, `p²..2p²`
/// the `⟨b⟩`-cosets, each family sorted by minimal member index.
#[derive(Debug, Clone)]
pub struct CosetGraph {
    pub params: GroupParams,
    pub graph: Graph,
    pub vertices: Vec<CosetVertex>,
    /// Member vertex indices (of Γ) of each coset, sorted.
    pub members: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl CosetGraph {
    /// Index of the coset with exactly these members, if any.
    pub fn find(&self, members: &[usize]) -> Option<usize> {
        let mut key = members.to_vec();
        key.sort_unstable();
        self.lookup.get(&key).copied()
    }

    pub fn coset_of(&self, family: CosetFamily, g: GroupElement) -> usize {
        let members = coset_members(&self.params, family, g);
        self.lookup[&members]
    }

    /// Group element at the intersection of two cosets, if it is a single
    /// element.
    pub fn intersection(&self, u: usize, v: usize) -> Vec<usize> {
        let b: BTreeSet<usize> = self.members[v].iter().copied().collect();
        self.members[u]
            .iter()
            .copied()
            .filter(|x| b.contains(x))
            .collect()
    }
}

fn coset_members(params: &GroupParams, family: CosetFamily, x: GroupElement) -> Vec<usize> {
    let gen = match family {
        CosetFamily::A => params.a(),
        CosetFamily::B => params.b(),
    };
    let mut out: Vec<usize> = (0..params.p() as u64)
        .map(|i| params.index(params.multiply(params.pow(gen, i), x)))
        .collect();
    out.sort_unstable();
    out
}

/// `Cos(G, ⟨a⟩, ⟨b⟩)`: an `⟨a⟩`-coset and a `⟨b⟩`-coset are adjacent iff
/// they intersect. Checks that every intersection has exactly one element.
pub fn build_coset_graph(params: GroupParams) -> Result<CosetGraph> {
    let mut vertices = Vec::new();
    let mut members = Vec::new();
    for family in [CosetFamily::A, CosetFamily::B] {
        let mut cosets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in params.elements() {
            cosets.insert(coset_members(&params, family, x));
        }
        for m in cosets {
            vertices.push(CosetVertex {
                family,
                rep: params.from_index(m[0]),
            });
            members.push(m);
        }
    }
    let half = (params.p() as usize).pow(2);
    if vertices.len() != 2 * half {
        return Err(Error::InternalInvariant(format!(
            "expected {} cosets, found {}",
            2 * half,
            vertices.len()
        )));
    }
    let mut edges = Vec::new();
    for u in 0..half {
        let mu: BTreeSet<usize> = members[u].iter().copied().collect();
        for v in half..2 * half {
            let common = members[v].iter().filter(|x| mu.contains(x)).count();
            match common {
                0 => {}
                1 => edges.push((u, v)),
                k => {
                    return Err(Error::InternalInvariant(format!(
                        "cosets {} and {} share {k} elements",
                        vertices[u], vertices[v]
                    )))
                }
            }
        }
    }
    let labels = vertices.iter().map(|&c| VertexLabel::Coset(c)).collect();
    let graph = Graph::from_edges(2 * half, edges)?.with_labels(labels)?;
    let lookup = members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(CosetGraph {
        params,
        graph,
        vertices,
        members,
        lookup,
    })
}

/// Bijection from the maximal cliques of Γ (in `maximal_cliques` order) to
/// the vertices of the coset graph.
#[derive(Debug, Clone)]
pub struct CliqueCosetIdentification {
    pub clique_to_coset: Vec<usize>,
    pub check: CheckResult,
}

pub fn identify_clique_and_coset_graphs(
    ctx: &CayleyContext,
    sigma: &CosetGraph,
) -> Result<CliqueCosetIdentification> {
    let cliques = maximal_cliques(&ctx.gamma);
    let mut map = Vec::with_capacity(cliques.len());
    for c in &cliques {
        let Some(idx) = sigma.find(c) else {
            let labels: Vec<String> = c.iter().map(|&v| ctx.element(v).to_string()).collect();
            return Err(Error::MismatchWitness(format!(
                "clique {{{}}} is not a coset of <a> or <b>",
                labels.join(", ")
            )));
        };
        map.push(idx);
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() || map.len() != sigma.graph.n() {
        return Err(Error::MismatchWitness(format!(
            "{} cliques map onto {} of {} cosets",
            map.len(),
            distinct.len(),
            sigma.graph.n()
        )));
    }
    // adjacency of cliques (shared vertex) against adjacency of cosets
    let mut mismatches = 0usize;
    let mut witness = None;
    for x in 0..cliques.len() {
        for y in x + 1..cliques.len() {
            let share = cliques[x]
                .iter()
                .any(|v| cliques[y].binary_search(v).is_ok());
            if share != sigma.graph.is_adjacent(map[x], map[y]) {
                mismatches += 1;
                witness.get_or_insert((x, y));
            }
        }
    }
    let check = CheckResult::expect_eq("clique_coset.identification", json!(0), json!(mismatches))
        .with_witness_opt(witness.map(|(x, y)| json!({"cliques": [cliques[x], cliques[y]]})));
    Ok(CliqueCosetIdentification {
        clique_to_coset: map,
        check,
    })
}

/// `edge_to_element[e]` is the vertex of Γ at the intersection of the two
/// cosets joined by edge `e` of Σ (edges in sorted order).
#[derive(Debug, Clone)]
pub struct LineGraphIsomorphism {
    pub edge_to_element: Vec<usize>,
    pub check: CheckResult,
}

pub fn line_graph_isomorphism(
    ctx: &CayleyContext,
    sigma: &CosetGraph,
) -> Result<LineGraphIsomorphism> {
    let edges = sigma.graph.edges();
    let lg = line_graph(&sigma.graph);
    let mut map = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let common = sigma.intersection(u, v);
        if common.len() != 1 {
            return Err(Error::NotIsomorphism(format!(
                "edge {{{}, {}}} meets in {} elements",
                sigma.vertices[u],
                sigma.vertices[v],
                common.len()
            )));
        }
        map.push(common[0]);
    }
    let mut inverse = vec![usize::MAX; ctx.gamma.n()];
    for (e, &x) in map.iter().enumerate() {
        if inverse[x] != usize::MAX {
            return Err(Error::NotIsomorphism(format!(
                "edges {} and {e} both map to {}",
                inverse[x],
                ctx.element(x)
            )));
        }
        inverse[x] = e;
    }
    if let Some(x) = inverse.iter().position(|&e| e == usize::MAX) {
        return Err(Error::NotIsomorphism(format!(
            "element {} is not the image of an edge",
            ctx.element(x)
        )));
    }
    for (e, f) in lg.edges() {
        if !ctx.gamma.is_adjacent(map[e], map[f]) {
            return Err(Error::NotIsomorphism(format!(
                "edges {e} and {f} share an endpoint but {} and {} are not adjacent",
                ctx.element(map[e]),
                ctx.element(map[f])
            )));
        }
    }
    for (x, y) in ctx.gamma.edges() {
        if !lg.is_adjacent(inverse[x], inverse[y]) {
            return Err(Error::NotIsomorphism(format!(
                "{} ~ {} in Γ but edges {} and {} are disjoint",
                ctx.element(x),
                ctx.element(y),
                inverse[x],
                inverse[y]
            )));
        }
    }
    let check = CheckResult::expect_eq(
        "sigma.line_graph_isomorphism",
        json!({"vertices": ctx.gamma.n(), "edges": ctx.gamma.edge_count()}),
        json!({"vertices": lg.n(), "edges": lg.edge_count()}),
    );
    Ok(LineGraphIsomorphism {
        edge_to_element: map,
        check,
    })
}

/// Permutation of Σ induced by an automorphism of Γ acting on cosets.
pub fn induced_action_on_sigma(sigma: &CosetGraph, g_perm: &Permutation) -> Result<Permutation> {
    let images = sigma
        .members
        .iter()
        .enumerate()
        .map(|(u, m)| {
            let image: Vec<usize> = m.iter().map(|&v| g_perm.apply(v)).collect();
            sigma.find(&image).map(|i| i as u32).ok_or_else(|| {
                Error::NotCliquePreserving(format!("coset {} has no image", sigma.vertices[u]))
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    Permutation::from_images(images)
        .map_err(|_| Error::NotCliquePreserving("induced map is not a bijection".into()))
}

/// Image of a group acting on Γ in its induced action on Σ.
pub fn induced_group_on_sigma(sigma: &CosetGraph, group: &PermGroup) -> Result<PermGroup> {
    group.induced(sigma.graph.n(), |g| induced_action_on_sigma(sigma, g))
}
