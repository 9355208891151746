//! Undirected simple graphs and the structural algorithms used by the checks.

mod cliques;
mod io;
mod quotient;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coset::CosetVertex;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::perm::Permutation;

pub use cliques::{clique_graph, line_graph, maximal_cliques};
pub use io::GraphJson;
pub use quotient::{
    is_normal_cover, quotient_graph, CoverCertificate, CoverViolation, QuotientGraph,
};

/// Per-vertex label carried through constructions and exports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexLabel {
    Element(GroupElement),
    Coset(CosetVertex),
    /// Maximal clique, by member vertex indices.
    Clique(Vec<u32>),
    /// Edge `{u, v}` of an underlying graph, `u < v`.
    Edge(u32, u32),
    /// Block of a partition, by member vertex indices.
    Block(Vec<u32>),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(xs: &[u32]) -> String {
            xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            VertexLabel::Element(g) => write!(f, "{g}"),
            VertexLabel::Coset(c) => write!(f, "{c}"),
            VertexLabel::Clique(m) => write!(f, "K{{{}}}", join(m)),
            VertexLabel::Edge(u, v) => write!(f, "{u}-{v}"),
            VertexLabel::Block(m) => write!(f, "[{}]", join(m)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    labels: Option<Vec<VertexLabel>>,
}

/// BFS layering `Γ_0(u), Γ_1(u), …` of the component containing `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistancePartition {
    pub source: usize,
    pub spheres: Vec<Vec<usize>>,
}

impl DistancePartition {
    pub fn eccentricity(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Ok(Self { adj, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&VertexLabel> {
        self.labels.as_ref().map(|l| &l[v])
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Common degree if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|n| n.len() == d).then_some(d)
    }

    /// Distances from `u`; `None` for unreachable vertices.
    pub fn distances_from(&self, u: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                let y = y as usize;
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance_partition(&self, u: usize) -> Result<DistancePartition> {
        if u >= self.n() {
            return Err(Error::OutOfRange {
                index: u,
                limit: self.n(),
            });
        }
        let mut spheres: Vec<Vec<usize>> = Vec::new();
        for (v, d) in self.distances_from(u).into_iter().enumerate() {
            if let Some(d) = d {
                if spheres.len() <= d {
                    spheres.resize(d + 1, Vec::new());
                }
                spheres[d].push(v);
            }
        }
        Ok(DistancePartition { source: u, spheres })
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest finite distance; `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for u in 0..self.n() {
            for d in self.distances_from(u) {
                diam = diam.max(d?);
            }
        }
        Some(diam)
    }

    /// Shortest cycle length; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[x] + 1 >= b {
                        break 'bfs;
                    }
                }
                for &y in &self.adj[x] {
                    let y = y as usize;
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Two-colouring `side[v] ∈ {0, 1}` if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    let y = y as usize;
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Ordered pairs `(u, v)` at distance exactly `d`, sorted.
    pub fn pairs_at_distance(&self, d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for (v, dv) in self.distances_from(u).into_iter().enumerate() {
                if dv == Some(d) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.n()
            && self.adj.iter().enumerate().all(|(u, nbrs)| {
                nbrs.iter()
                    .all(|&v| self.is_adjacent(g.apply(u), g.apply(v as usize)))
            })
    }

    /// Errors with a witness edge if `g` does not preserve adjacency.
    pub fn check_automorphism(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.n() {
            return Err(Error::DegreeMismatch {
                expected: self.n(),
                got: g.degree(),
            });
        }
        for (u, v) in self.edges() {
            if !self.is_adjacent(g.apply(u), g.apply(v)) {
                return Err(Error::NotGraphAutomorphism(format!(
                    "edge {{{u}, {v}}} maps to non-edge {{{}, {}}}",
                    g.apply(u),
                    g.apply(v)
                )));
            }
        }
        Ok(())
    }

    /// All s-arcs `(v_0, …, v_s)` in lexicographic order.
    pub fn s_arcs(&self, s: usize) -> Vec<Vec<usize>> {
        fn extend(g: &Graph, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == s + 1 {
                out.push(cur.clone());
                return;
            }
            let last = *cur.last().unwrap();
            let back = (cur.len() >= 2).then(|| cur[cur.len() - 2]);
            for &y in &g.adj[last] {
                let y = y as usize;
                if Some(y) == back {
                    continue;
                }
                cur.push(y);
                extend(g, s, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(s + 1);
        for v in 0..self.n() {
            cur.push(v);
            extend(self, s, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm(v)`.
    pub fn permuted(&self, perm: &Permutation) -> Graph {
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm.apply(u), perm.apply(v)));
        let mut g = Graph::from_edges(self.n(), edges).expect("relabelling keeps the graph simple");
        if let Some(labels) = &self.labels {
            let mut new = labels.clone();
            for (v, l) in labels.iter().enumerate() {
                new[perm.apply(v)] = l.clone();
            }
            g.labels = Some(new);
        }
        g
    }
}
