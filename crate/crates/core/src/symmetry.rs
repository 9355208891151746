//! Transitivity predicates as checks that carry witnesses on failure.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cayley::CayleyContext;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{orbits_on_edges, orbits_on_ordered_pairs, orbits_on_tuples, PermGroup};

/// Outcome of one check. `pass` is `expected == actual` when an expected
/// value is present and `true` otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    pub actual: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Extra facts reported alongside the verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// Informational checks do not count towards the overall verdict.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl CheckResult {
    pub fn expect_eq(name: impl Into<String>, expected: Value, actual: Value) -> Self {
        Self {
            name: name.into(),
            pass: expected == actual,
            expected: Some(expected),
            actual,
            witness: None,
            detail: None,
            informational: false,
        }
    }

    pub fn expect_true(name: impl Into<String>, actual: bool) -> Self {
        Self::expect_eq(name, json!(true), json!(actual))
    }

    pub fn info(name: impl Into<String>, actual: Value) -> Self {
        Self {
            name: name.into(),
            pass: true,
            expected: None,
            actual,
            witness: None,
            detail: None,
            informational: true,
        }
    }

    /// A check that could not produce a value, e.g. because a module
    /// returned an error.
    pub fn failed(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: false,
            expected: None,
            actual: json!({ "error": reason.into() }),
            witness: None,
            detail: None,
            informational: false,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_witness_opt(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Recomputes `pass` from `expected` and `actual`, keeping a forced
    /// failure (no expected value and not informational) as it is.
    pub fn is_consistent(&self) -> bool {
        match &self.expected {
            Some(e) => self.pass == (*e == self.actual),
            None => self.pass || !self.informational,
        }
    }
}

fn check_generators(g: &Graph, group: &PermGroup) -> Result<()> {
    if group.degree() != g.n() {
        return Err(Error::DegreeMismatch {
            expected: g.n(),
            got: group.degree(),
        });
    }
    for gen in group.generators() {
        if !g.is_automorphism(gen) {
            return Err(Error::NotAutomorphismGroup(format!(
                "generator {gen:?} does not preserve adjacency"
            )));
        }
    }
    Ok(())
}

/// Whether some element of `group` maps tuple `a` to tuple `b`, by a fresh
/// closure of the orbit of `a` under the generators.
pub fn in_same_orbit(group: &PermGroup, a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(a.to_vec());
    let mut stack = vec![a.to_vec()];
    while let Some(x) = stack.pop() {
        if x == b {
            return true;
        }
        for gen in group.generators() {
            let y: Vec<usize> = x.iter().map(|&v| gen.apply(v)).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    false
}

/// Transitivity on ordered pairs at each distance `1..=t`.
pub fn check_t_distance_transitive(g: &Graph, group: &PermGroup, t: usize) -> Result<CheckResult> {
    check_generators(g, group)?;
    let diam = g
        .diameter()
        .ok_or(Error::InvalidGraph("graph is disconnected".into()))?;
    if t == 0 || t > diam {
        return Err(Error::OutOfRange {
            index: t,
            limit: diam,
        });
    }
    let mut counts = Vec::with_capacity(t);
    let mut witness = None;
    for i in 1..=t {
        let orbits = orbits_on_ordered_pairs(group, g.pairs_at_distance(i))?;
        counts.push(orbits.len());
        if orbits.len() > 1 && witness.is_none() {
            witness = Some(json!({
                "distance": i,
                "pairs": [[orbits[0][0].0, orbits[0][0].1], [orbits[1][0].0, orbits[1][0].1]],
            }));
        }
    }
    Ok(CheckResult::expect_eq(
        format!("{t}_distance_transitive"),
        json!(vec![1; t]),
        json!(counts),
    )
    .with_witness_opt(witness))
}

pub fn check_distance_transitive(g: &Graph, group: &PermGroup) -> Result<CheckResult> {
    check_generators(g, group)?;
    let diam = g
        .diameter()
        .ok_or(Error::InvalidGraph("graph is disconnected".into()))?;
    if diam == 0 {
        return Ok(CheckResult::expect_eq(
            "distance_transitive",
            json!([]),
            json!([]),
        ));
    }
    Ok(check_t_distance_transitive(g, group, diam)?.renamed("distance_transitive"))
}

/// Transitivity on s-arcs; the actual value is the number of orbits.
pub fn check_s_arc_transitive(g: &Graph, group: &PermGroup, s: usize) -> Result<CheckResult> {
    check_generators(g, group)?;
    let arcs = g.s_arcs(s);
    if arcs.is_empty() {
        return Err(Error::NoSArcs(s));
    }
    let total = arcs.len();
    let orbits = orbits_on_tuples(group, arcs)?;
    let witness = (orbits.len() > 1).then(|| json!({ "arcs": [orbits[0][0], orbits[1][0]] }));
    Ok(
        CheckResult::expect_eq(format!("{s}_arc_transitive"), json!(1), json!(orbits.len()))
            .with_witness_opt(witness)
            .with_detail(json!({ "arcs": total })),
    )
}

/// Transitive and free on s-arcs.
pub fn check_s_arc_regular(g: &Graph, group: &PermGroup, s: usize) -> Result<CheckResult> {
    let transitive = check_s_arc_transitive(g, group, s)?;
    let arcs = g.s_arcs(s).len();
    let order = group.order()?;
    let orbit_count = transitive.actual.clone();
    Ok(CheckResult::expect_eq(
        format!("{s}_arc_regular"),
        json!({ "orbits": 1, "group_order": arcs }),
        json!({ "orbits": orbit_count, "group_order": order }),
    )
    .with_witness_opt(transitive.witness)
    .with_detail(json!({ "arcs": arcs })))
}

/// Edge-transitive but not vertex-transitive.
pub fn check_semisymmetric(g: &Graph, group: &PermGroup) -> Result<CheckResult> {
    check_generators(g, group)?;
    let edge_orbits = orbits_on_edges(group, g.edges())?;
    let vertex_orbits = group.orbits();
    let witness = if edge_orbits.len() > 1 {
        Some(json!({ "edges": [edge_orbits[0][0], edge_orbits[1][0]] }))
    } else if vertex_orbits.len() == 1 && g.n() > 1 {
        Some(json!({ "vertex_orbit": vertex_orbits[0].len() }))
    } else {
        None
    };
    Ok(CheckResult::expect_eq(
        "semisymmetric",
        json!({ "edge_orbits": 1, "vertex_transitive": false }),
        json!({ "edge_orbits": edge_orbits.len(), "vertex_transitive": vertex_orbits.len() == 1 }),
    )
    .with_witness_opt(witness)
    .with_detail(json!({ "vertex_orbits": vertex_orbits.len() })))
}

/// `R(G) ⊴ aut`, `aut_0 = Aut(G,S)` as element sets and `|aut| = |N|`.
pub fn check_normal_cayley(ctx: &CayleyContext, aut: &PermGroup) -> Result<CheckResult> {
    check_generators(&ctx.gamma, aut)?;
    let rg_normal = ctx.rg.is_normal_in(aut)?;
    let stab = aut.stabilizer(0)?;
    let stab_is_aut_gs = stab.same_elements(&ctx.aut_gs)?;
    let order = aut.order()?;
    let witness = if !rg_normal {
        aut.generators()
            .iter()
            .find(|g| {
                ctx.rg
                    .generators()
                    .iter()
                    .any(|h| !ctx.rg.contains(&h.conjugate_by(g)).unwrap_or(false))
            })
            .map(|g| json!({ "non_normalizing_generator": g.images() }))
    } else if !stab_is_aut_gs {
        Some(json!({ "stabilizer_order": stab.order()?, "aut_gs_order": ctx.aut_gs.order()? }))
    } else {
        None
    };
    Ok(CheckResult::expect_eq(
        "normal_cayley",
        json!({ "rg_normal": true, "stabilizer_is_aut_gs": true, "order": ctx.n_order }),
        json!({ "rg_normal": rg_normal, "stabilizer_is_aut_gs": stab_is_aut_gs, "order": order }),
    )
    .with_witness_opt(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn symmetric_group(n: usize) -> PermGroup {
        let swap = Permutation::from_fn(n, |x| match x {
            0 => 1,
            1 => 0,
            _ => x,
        })
        .unwrap();
        let cycle = Permutation::from_fn(n, |x| (x + 1) % n).unwrap();
        PermGroup::lazy(n, vec![swap, cycle]).unwrap()
    }

    #[test]
    fn complete_graph_is_distance_transitive() {
        let g = Graph::complete(5);
        let r = check_distance_transitive(&g, &symmetric_group(5)).unwrap();
        assert!(r.pass);
        assert!(r.witness.is_none());
    }

    #[test]
    fn cycle_under_rotations_only() {
        // rotations alone are arc-transitive on C6 only in one direction
        let g = Graph::cycle(6);
        let rot = Permutation::from_fn(6, |x| (x + 1) % 6).unwrap();
        let group = PermGroup::lazy(6, vec![rot]).unwrap();
        let r = check_s_arc_transitive(&g, &group, 1).unwrap();
        assert!(!r.pass);
        assert_eq!(r.actual, json!(2));
        let arcs = r.witness.unwrap()["arcs"].clone();
        let a: Vec<usize> = serde_json::from_value(arcs[0].clone()).unwrap();
        let b: Vec<usize> = serde_json::from_value(arcs[1].clone()).unwrap();
        assert!(!in_same_orbit(&group, &a, &b));
    }

    #[test]
    fn non_automorphism_rejected() {
        let g = Graph::path(3);
        let bad = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let group = PermGroup::lazy(3, vec![bad]).unwrap();
        assert!(matches!(
            check_t_distance_transitive(&g, &group, 1),
            Err(Error::NotAutomorphismGroup(_))
        ));
    }

    #[test]
    fn no_arcs() {
        let g = Graph::path(2);
        assert!(matches!(
            check_s_arc_transitive(&g, &PermGroup::trivial(2), 2),
            Err(Error::NoSArcs(2))
        ));
    }

    #[test]
    fn star_is_semisymmetric_under_leaf_group() {
        // K_{1,3}: edge-transitive, two vertex orbits
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = Permutation::from_images(vec![0, 2, 3, 1]).unwrap();
        let r = check_semisymmetric(&g, &PermGroup::lazy(4, vec![c]).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.detail.unwrap()["vertex_orbits"], json!(2));
    }

    #[test]
    fn arc_regular_cycle() {
        let g = Graph::cycle(5);
        let rot = Permutation::from_fn(5, |x| (x + 1) % 5).unwrap();
        let refl = Permutation::from_fn(5, |x| (5 - x) % 5).unwrap();
        let d5 = PermGroup::lazy(5, vec![rot, refl]).unwrap();
        assert!(check_s_arc_regular(&g, &d5, 1).unwrap().pass);
        assert!(check_s_arc_regular(&g, &d5, 4).unwrap().pass);
        assert!(
            !check_s_arc_regular(&Graph::complete(4), &symmetric_group(4), 1)
                .unwrap()
                .pass
        );
    }
}
