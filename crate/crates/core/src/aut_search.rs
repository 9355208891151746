//! Full automorphism groups by equitable refinement and individualization.
//!
//! The search follows the leftmost path of the search tree to a discrete
//! partition (the reference leaf), then, level by level from the bottom up,
//! decides which vertices of the target cell lie in the orbit of the vertex
//! individualized on that path. Each decision either finds an automorphism
//! mapping the reference leaf into the candidate's subtree or exhausts that
//! subtree. Subtrees whose refinement trace differs from the reference path
//! at the same depth are pruned, and candidates already in a known orbit
//! are skipped. The group order is the product of the orbit sizes along the
//! path and is cross-checked against the closure of the generators found.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};

/// Default cap on the number of vertices accepted by the search.
pub const DEFAULT_VERTEX_BOUND: usize = 1000;

/// An ordered partition of the vertex set into cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredPartition {
    cells: Vec<Vec<u32>>,
}

impl ColoredPartition {
    pub fn unit(n: usize) -> Self {
        let cells = if n == 0 {
            vec![]
        } else {
            vec![(0..n as u32).collect()]
        };
        Self { cells }
    }

    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(cells.len());
        for cell in cells {
            if cell.is_empty() {
                return Err(Error::BadPartition("empty cell".into()));
            }
            let mut c: Vec<u32> = Vec::with_capacity(cell.len());
            for v in cell {
                if v >= n || seen[v] {
                    return Err(Error::BadPartition(format!(
                        "vertex {v} is out of range or repeated"
                    )));
                }
                seen[v] = true;
                c.push(v as u32);
            }
            c.sort_unstable();
            out.push(c);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadPartition(
                "cells do not cover every vertex".into(),
            ));
        }
        Ok(Self { cells: out })
    }

    pub fn cells(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|c| c.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Every vertex of a cell has the same number of neighbours in each cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let mut cell_of = vec![0usize; g.n()];
        for (ci, c) in self.cells.iter().enumerate() {
            for &v in c {
                cell_of[v as usize] = ci;
            }
        }
        let profile = |v: u32| {
            let mut counts = vec![0usize; self.cells.len()];
            for &w in g.neighbors(v as usize) {
                counts[cell_of[w as usize]] += 1;
            }
            counts
        };
        self.cells.iter().all(|c| {
            let first = profile(c[0]);
            c.iter().all(|&v| profile(v) == first)
        })
    }
}

/// Coarsest equitable refinement of `partition`.
pub fn refine(g: &Graph, partition: &ColoredPartition) -> ColoredPartition {
    let mut cells = partition.cells.clone();
    Refiner::new(g).refine(&mut cells);
    ColoredPartition { cells }
}

struct Refiner<'g> {
    g: &'g Graph,
    counts: Vec<u32>,
    cell_of: Vec<u32>,
    touched: Vec<u32>,
    touched_cells: Vec<u32>,
    cell_mark: Vec<bool>,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(h << 6)
        .wrapping_add(h >> 2))
    .wrapping_mul(0x0100_0000_01b3)
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Self {
            g,
            counts: vec![0; n],
            cell_of: vec![0; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            cell_mark: Vec::new(),
        }
    }

    fn index_cells(&mut self, cells: &[Vec<u32>]) {
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                self.cell_of[v as usize] = ci as u32;
            }
        }
        self.cell_mark.clear();
        self.cell_mark.resize(cells.len(), false);
    }

    /// Refines in place and returns a hash of the splitting trace. The
    /// procedure depends only on cell positions and neighbour counts, so
    /// it commutes with graph automorphisms and equal inputs up to an
    /// automorphism produce equal traces.
    fn refine(&mut self, cells: &mut Vec<Vec<u32>>) -> u64 {
        let mut trace: u64 = 0xcbf2_9ce4_8422_2325;
        self.index_cells(cells);
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                // neighbour counts into cell s
                for &u in &cells[s] {
                    for &w in self.g.neighbors(u as usize) {
                        if self.counts[w as usize] == 0 {
                            self.touched.push(w);
                        }
                        self.counts[w as usize] += 1;
                    }
                }
                for &w in &self.touched {
                    let ci = self.cell_of[w as usize];
                    if !self.cell_mark[ci as usize] {
                        self.cell_mark[ci as usize] = true;
                        self.touched_cells.push(ci);
                    }
                }
                self.touched_cells.sort_unstable();
                let mut splits: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
                for &ci in &self.touched_cells {
                    let cell = &cells[ci as usize];
                    if cell.len() == 1 {
                        continue;
                    }
                    let c0 = self.counts[cell[0] as usize];
                    if cell.iter().all(|&v| self.counts[v as usize] == c0) {
                        continue;
                    }
                    let mut keyed: Vec<(u32, u32)> =
                        cell.iter().map(|&v| (self.counts[v as usize], v)).collect();
                    keyed.sort_unstable();
                    let mut frags: Vec<Vec<u32>> = Vec::new();
                    let mut last = u32::MAX;
                    for (c, v) in keyed {
                        if c != last {
                            frags.push(Vec::new());
                            last = c;
                            trace = mix(trace, ((s as u64) << 40) ^ ((ci as u64) << 20) ^ c as u64);
                        }
                        frags.last_mut().unwrap().push(v);
                    }
                    for f in &frags {
                        trace = mix(trace, f.len() as u64);
                    }
                    splits.push((ci as usize, frags));
                }
                for &w in &self.touched {
                    self.counts[w as usize] = 0;
                }
                self.touched.clear();
                for &ci in &self.touched_cells {
                    self.cell_mark[ci as usize] = false;
                }
                self.touched_cells.clear();
                if !splits.is_empty() {
                    changed = true;
                    let mut next = Vec::with_capacity(cells.len() + splits.len());
                    let mut it = splits.into_iter().peekable();
                    for (ci, cell) in cells.drain(..).enumerate() {
                        if it.peek().is_some_and(|(sci, _)| *sci == ci) {
                            next.extend(it.next().unwrap().1);
                        } else {
                            next.push(cell);
                        }
                    }
                    *cells = next;
                    self.index_cells(cells);
                }
                s += 1;
            }
            if !changed {
                break;
            }
        }
        mix(trace, cells.len() as u64)
    }
}

/// First smallest non-singleton cell.
fn target_cell(cells: &[Vec<u32>]) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualize(cells: &[Vec<u32>], ci: usize, v: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..ci]);
    out.push(vec![v]);
    out.push(cells[ci].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[ci + 1..]);
    out
}

struct PathNode {
    cells: Vec<Vec<u32>>,
    trace: u64,
    target: Option<usize>,
}

/// Union-find over vertices for orbit bookkeeping.
struct Orbits {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (big, small) = if self.size[ra] >= self.size[rb] {
                (ra, rb)
            } else {
                (rb, ra)
            };
            self.parent[small] = big;
            self.size[big] += self.size[small];
        }
    }

    fn absorb(&mut self, g: &Permutation) {
        for x in 0..g.degree() {
            self.union(x, g.apply(x));
        }
    }
}

/// Result of [`automorphism_search`].
#[derive(Debug, Clone)]
pub struct AutSearch {
    pub group: PermGroup,
    /// Product of the orbit sizes along the reference path.
    pub order: u128,
    /// Vertices individualized along the reference path.
    pub base: Vec<usize>,
    /// Orbit of each base point in the pointwise stabilizer of the earlier ones.
    pub orbit_sizes: Vec<usize>,
    /// Search-tree nodes refined.
    pub nodes: usize,
}

struct Search<'g> {
    g: &'g Graph,
    refiner: Refiner<'g>,
    path: Vec<PathNode>,
    leaf: Vec<u32>,
    nodes: usize,
}

impl<'g> Search<'g> {
    fn refine_node(&mut self, cells: &mut Vec<Vec<u32>>) -> u64 {
        self.nodes += 1;
        self.refiner.refine(cells)
    }

    /// Looks for an automorphism mapping the reference leaf to a leaf
    /// below `cells`, which sits at `depth` and matched the reference trace.
    fn find_leaf(&mut self, cells: Vec<Vec<u32>>, depth: usize) -> Option<Permutation> {
        let reference_target = self.path[depth].target;
        let target = target_cell(&cells);
        if target != reference_target {
            return None;
        }
        let Some(ci) = target else {
            let mut images = vec![0u32; self.g.n()];
            for (pos, cell) in cells.iter().enumerate() {
                images[self.leaf[pos] as usize] = cell[0];
            }
            let perm = Permutation::from_images_unchecked(images);
            return self.g.is_automorphism(&perm).then_some(perm);
        };
        let candidates = cells[ci].clone();
        for u in candidates {
            let mut child = individualize(&cells, ci, u);
            let trace = self.refine_node(&mut child);
            if trace != self.path[depth + 1].trace {
                continue;
            }
            if let Some(perm) = self.find_leaf(child, depth + 1) {
                return Some(perm);
            }
        }
        None
    }
}

/// Automorphism group of `g` with search statistics.
pub fn automorphism_search(g: &Graph) -> Result<AutSearch> {
    automorphism_search_with_bound(g, DEFAULT_VERTEX_BOUND)
}

pub fn automorphism_search_with_bound(g: &Graph, vertex_bound: usize) -> Result<AutSearch> {
    let n = g.n();
    if n > vertex_bound {
        return Err(Error::BoundExceeded {
            what: "automorphism search vertex count".into(),
            bound: vertex_bound,
        });
    }
    if n == 0 {
        return Ok(AutSearch {
            group: PermGroup::trivial(0),
            order: 1,
            base: vec![],
            orbit_sizes: vec![],
            nodes: 0,
        });
    }
    let mut search = Search {
        g,
        refiner: Refiner::new(g),
        path: Vec::new(),
        leaf: Vec::new(),
        nodes: 0,
    };

    // reference path
    let mut cells = ColoredPartition::unit(n).cells;
    let mut trace = search.refine_node(&mut cells);
    let mut base = Vec::new();
    loop {
        let target = target_cell(&cells);
        search.path.push(PathNode {
            cells: cells.clone(),
            trace,
            target,
        });
        let Some(ci) = target else { break };
        let v = cells[ci][0];
        base.push(v as usize);
        cells = individualize(&cells, ci, v);
        trace = search.refine_node(&mut cells);
    }
    search.leaf = cells.iter().map(|c| c[0]).collect();

    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![0usize; base.len()];
    for level in (0..base.len()).rev() {
        // every generator found so far fixes base[..level] pointwise
        let mut orbits = Orbits::new(n);
        for gen in &generators {
            orbits.absorb(gen);
        }
        let node_cells = search.path[level].cells.clone();
        let ci = search.path[level]
            .target
            .expect("non-leaf node has a target");
        let v = base[level];
        let mut rejected: Vec<usize> = Vec::new();
        for &w in &node_cells[ci] {
            let w = w as usize;
            if orbits.find(w) == orbits.find(v) {
                continue;
            }
            if rejected.iter().any(|&r| orbits.find(r) == orbits.find(w)) {
                continue;
            }
            let mut child = individualize(&node_cells, ci, w as u32);
            let trace = search.refine_node(&mut child);
            let found = if trace == search.path[level + 1].trace {
                search.find_leaf(child, level + 1)
            } else {
                None
            };
            match found {
                Some(perm) => {
                    debug_assert!((0..level).all(|j| perm.fixes(base[j])));
                    orbits.absorb(&perm);
                    generators.push(perm);
                }
                None => rejected.push(w),
            }
        }
        let root = orbits.find(v);
        orbit_sizes[level] = node_cells[ci]
            .iter()
            .filter(|&&w| orbits.find(w as usize) == root)
            .count();
    }

    let order: u128 = orbit_sizes.iter().map(|&s| s as u128).product();
    let group = PermGroup::lazy(n, generators)?;
    Ok(AutSearch {
        group,
        order,
        base,
        orbit_sizes,
        nodes: search.nodes,
    })
}

/// Full automorphism group. The order from the search is checked against
/// the enumerated closure of the generators.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    let result = automorphism_search(g)?;
    let closure_order = result.group.order()? as u128;
    if closure_order != result.order {
        return Err(Error::InternalInvariant(format!(
            "search order {} disagrees with closure order {closure_order}",
            result.order
        )));
    }
    for gen in result.group.generators() {
        g.check_automorphism(gen)?;
    }
    Ok(result.group)
}

/// Stabilizer of `v` in the full automorphism group.
pub fn vertex_stabilizer_in_aut(g: &Graph, v: usize) -> Result<PermGroup> {
    if v >= g.n() {
        return Err(Error::OutOfRange {
            index: v,
            limit: g.n(),
        });
    }
    automorphism_group(g)?.stabilizer(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn regular_graph_unit_partition_unchanged() {
        let g = petersen();
        let p = refine(&g, &ColoredPartition::unit(10));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn refinement_is_equitable_and_idempotent() {
        let g = Graph::path(7);
        let p = refine(&g, &ColoredPartition::unit(7));
        assert!(p.is_equitable(&g));
        assert_eq!(refine(&g, &p), p);
        // ends, next-to-ends, ..., centre
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn known_orders() {
        assert_eq!(
            automorphism_group(&Graph::complete(4))
                .unwrap()
                .order()
                .unwrap(),
            24
        );
        assert_eq!(
            automorphism_group(&Graph::cycle(7))
                .unwrap()
                .order()
                .unwrap(),
            14
        );
        assert_eq!(
            automorphism_group(&Graph::path(5))
                .unwrap()
                .order()
                .unwrap(),
            2
        );
        assert_eq!(
            automorphism_group(&petersen()).unwrap().order().unwrap(),
            120
        );
        let empty = Graph::from_edges(4, []).unwrap();
        assert_eq!(automorphism_group(&empty).unwrap().order().unwrap(), 24);
    }

    #[test]
    fn disconnected_union() {
        // two triangles and an isolated edge: (3!·3!·2)·2 = 144
        let g =
            Graph::from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7)]).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().order().unwrap(), 144);
    }

    #[test]
    fn k4_stabilizer() {
        let st = vertex_stabilizer_in_aut(&Graph::complete(4), 2).unwrap();
        assert_eq!(st.order().unwrap(), 6);
    }

    #[test]
    fn vertex_bound() {
        assert!(matches!(
            automorphism_search_with_bound(&Graph::cycle(5), 4),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
