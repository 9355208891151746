//! The Cayley graph `Γ = Cay(G, S)` with its right-regular group `R(G)`, the
//! vertex action of `Aut(G,S)` and the normaliser `N = R(G) ⋊ Aut(G,S)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabel};
use crate::group::{GroupAutomorphism, GroupElement, GroupParams};
use crate::perm::{PermGroup, Permutation};

/// Largest `p` for which `N` is enumerated element by element while
/// building the context; above it the order follows from the verified
/// semidirect structure.
pub const MAX_P_ENUMERATE_N: u32 = 7;

/// `R(g): x ↦ xg` on vertex indices.
pub fn right_translation(g: GroupElement, params: &GroupParams) -> Permutation {
    let images = params
        .elements()
        .map(|x| params.index(params.multiply(x, g)) as u32)
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `v ↦ φ(v)` on vertex indices.
pub fn automorphism_vertex_action(phi: &GroupAutomorphism, params: &GroupParams) -> Permutation {
    let images = params
        .elements()
        .map(|x| params.index(phi.apply(params, x)) as u32)
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `Cay(G, S)` where `g ~ h ⇔ h g⁻¹ ∈ S`, vertices labelled by element.
pub fn cayley_graph(params: &GroupParams, s: &[GroupElement]) -> Result<Graph> {
    let mut edges = Vec::with_capacity(params.order() * s.len());
    for g in params.elements() {
        for &x in s {
            let h = params.multiply(x, g);
            edges.push((params.index(g), params.index(h)));
        }
    }
    let labels = params.elements().map(VertexLabel::Element).collect();
    Graph::from_edges(params.order(), edges)?.with_labels(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderMethod {
    /// Every element was enumerated.
    Enumerated,
    /// Derived as `|R(G)|·|Aut(G,S)|` after checking that `Aut(G,S)`
    /// normalises `R(G)` and meets it trivially.
    SemidirectProduct,
}

#[derive(Debug, Clone)]
pub struct CayleyContext {
    pub params: GroupParams,
    pub connection_set: Vec<GroupElement>,
    pub gamma: Graph,
    pub rg: PermGroup,
    pub aut_gs_maps: Vec<GroupAutomorphism>,
    pub aut_gs: PermGroup,
    pub n: PermGroup,
    pub n_order: usize,
    pub n_order_method: OrderMethod,
}

/// Orders and shape of `Γ`, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSummary {
    pub p: u32,
    pub t: u32,
    pub vertices: usize,
    pub edges: usize,
    pub valency: Option<usize>,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub rg_order: usize,
    pub aut_gs_order: usize,
    pub n_order: usize,
}

fn invariant(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInvariant(msg()))
    }
}

pub fn build_cayley(params: GroupParams) -> Result<CayleyContext> {
    let p = params.p() as usize;
    let order = params.order();
    let s = params.connection_set();
    let s_set: BTreeSet<GroupElement> = s.iter().copied().collect();
    invariant(
        s.iter().all(|&x| s_set.contains(&params.inverse(x)))
            && !s_set.contains(&params.identity()),
        || "S must be inverse-closed and exclude the identity".into(),
    )?;

    let gamma = cayley_graph(&params, &s)?;
    invariant(gamma.valency() == Some(2 * (p - 1)), || {
        format!("valency {:?} != 2(p-1)", gamma.valency())
    })?;
    invariant(gamma.is_connected(), || "Γ is disconnected".into())?;

    let rg = PermGroup::closure(
        order,
        vec![
            right_translation(params.a(), &params),
            right_translation(params.b(), &params),
        ],
    )?;
    invariant(rg.order()? == order, || {
        format!("|R(G)| = {} != p^3", rg.order().unwrap_or(0))
    })?;
    invariant(rg.orbit(0).len() == order, || {
        "R(G) is not transitive".into()
    })?;
    for g in rg.generators() {
        gamma.check_automorphism(g)?;
    }

    let aut_gs_maps = params.aut_g_s()?;
    let [alpha, beta, gamma_map] = params.canonical_automorphisms();
    let canonical: Vec<Permutation> = [alpha, beta, gamma_map]
        .iter()
        .map(|phi| automorphism_vertex_action(phi, &params))
        .collect();
    for g in &canonical {
        gamma.check_automorphism(g)?;
    }
    let aut_gs = PermGroup::closure(order, canonical)?;
    let mut brute: Vec<Permutation> = aut_gs_maps
        .iter()
        .map(|phi| automorphism_vertex_action(phi, &params))
        .collect();
    brute.sort();
    invariant(aut_gs.elements()? == brute.as_slice(), || {
        "<α, β, γ> differs from the brute-force Aut(G,S)".into()
    })?;
    invariant(aut_gs.orbit(0) == vec![0], || {
        "Aut(G,S) moves the identity vertex".into()
    })?;

    // R(g)^φ = R(φ(g)) on generators: Aut(G,S) normalises R(G)
    for phi in [alpha, beta, gamma_map] {
        let act = automorphism_vertex_action(&phi, &params);
        for g in [params.a(), params.b()] {
            let lhs = right_translation(g, &params).conjugate_by(&act);
            let rhs = right_translation(phi.apply(&params, g), &params);
            invariant(lhs == rhs, || {
                format!("R({g})^{phi} != R({})", phi.apply(&params, g))
            })?;
        }
    }

    let n = rg.join(aut_gs.generators())?;
    let predicted = order * aut_gs_maps.len();
    let (n_order, n_order_method) = if params.p() <= MAX_P_ENUMERATE_N {
        (n.order()?, OrderMethod::Enumerated)
    } else {
        (predicted, OrderMethod::SemidirectProduct)
    };
    invariant(n_order == predicted, || {
        format!("|N| = {n_order}, expected |R(G)|·|Aut(G,S)| = {predicted}")
    })?;

    Ok(CayleyContext {
        params,
        connection_set: s,
        gamma,
        rg,
        aut_gs_maps,
        aut_gs,
        n,
        n_order,
        n_order_method,
    })
}

impl CayleyContext {
    pub fn vertex(&self, g: GroupElement) -> usize {
        self.params.index(g)
    }

    pub fn element(&self, v: usize) -> GroupElement {
        self.params.from_index(v)
    }

    pub fn right_translation(&self, g: GroupElement) -> Permutation {
        right_translation(g, &self.params)
    }

    /// Vertex action of `φ`, checked to preserve adjacency in `Γ`.
    pub fn automorphism_vertex_action(&self, phi: &GroupAutomorphism) -> Result<Permutation> {
        let act = automorphism_vertex_action(phi, &self.params);
        self.gamma.check_automorphism(&act)?;
        Ok(act)
    }

    /// Elements at distance `i` from the identity, sorted by index.
    pub fn sphere_elements(&self, i: usize) -> Result<Vec<GroupElement>> {
        let dp = self.gamma.distance_partition(0)?;
        let sphere = dp.spheres.get(i).ok_or(Error::OutOfRange {
            index: i,
            limit: dp.eccentricity(),
        })?;
        Ok(sphere.iter().map(|&v| self.element(v)).collect())
    }

    /// `⟨R(c)⟩`, the centre of `R(G)`.
    pub fn center_group(&self) -> Result<PermGroup> {
        PermGroup::closure(
            self.params.order(),
            vec![self.right_translation(self.params.c())],
        )
    }

    /// Orbits of `⟨R(c)⟩` on vertices: the cosets `g⟨c⟩`.
    pub fn center_partition(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self.center_group()?.orbits())
    }

    /// Permutation image of a subgroup of G under `g ↦ R(g)`.
    pub fn right_regular_image(&self, elements: &[GroupElement]) -> Result<PermGroup> {
        let perms = elements
            .iter()
            .map(|&g| self.right_translation(g))
            .collect();
        PermGroup::from_elements(self.params.order(), perms)
    }

    pub fn summary(&self) -> ContextSummary {
        ContextSummary {
            p: self.params.p(),
            t: self.params.t(),
            vertices: self.gamma.n(),
            edges: self.gamma.edge_count(),
            valency: self.gamma.valency(),
            girth: self.gamma.girth(),
            diameter: self.gamma.diameter(),
            rg_order: self.params.order(),
            aut_gs_order: self.aut_gs_maps.len(),
            n_order: self.n_order,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_examples() {
        let params = GroupParams::new(3).unwrap();
        assert!(right_translation(params.identity(), &params).is_identity());
        assert_eq!(right_translation(params.a(), &params).apply(0), 9);
    }

    #[test]
    fn translations_compose() {
        let params = GroupParams::new(5).unwrap();
        let g = params.element(1, 3, 2);
        let h = params.element(4, 1, 0);
        let lhs = right_translation(g, &params).then(&right_translation(h, &params));
        assert_eq!(lhs, right_translation(params.multiply(g, h), &params));
    }

    #[test]
    fn gamma_action_swaps_a_and_b() {
        let params = GroupParams::new(3).unwrap();
        let [_, _, gamma] = params.canonical_automorphisms();
        let act = automorphism_vertex_action(&gamma, &params);
        assert_eq!(
            act.apply(params.index(params.a())),
            params.index(params.b())
        );
        let id = GroupAutomorphism::identity(&params);
        assert!(automorphism_vertex_action(&id, &params).is_identity());
    }

    #[test]
    fn build_small() {
        let ctx = build_cayley(GroupParams::new(3).unwrap()).unwrap();
        assert_eq!(ctx.gamma.n(), 27);
        assert_eq!(ctx.gamma.valency(), Some(4));
        assert_eq!(ctx.n_order, 216);
        assert_eq!(ctx.n_order_method, OrderMethod::Enumerated);
        assert!(matches!(
            ctx.sphere_elements(99),
            Err(Error::OutOfRange { .. })
        ));
    }
}
