use super::{Graph, VertexLabel};

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn count_common(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<u32>,
    mut p: Vec<u32>,
    mut x: Vec<u32>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut clique: Vec<usize> = r.iter().map(|&v| v as usize).collect();
            clique.sort_unstable();
            out.push(clique);
        }
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| count_common(g.neighbors(u as usize), &p))
        .unwrap();
    let candidates: Vec<u32> = p
        .iter()
        .copied()
        .filter(|&v| !g.is_adjacent(pivot as usize, v as usize))
        .collect();
    for v in candidates {
        let nbrs = g.neighbors(v as usize);
        r.push(v);
        bron_kerbosch(g, r, intersect(&p, nbrs), intersect(&x, nbrs), out);
        r.pop();
        p.retain(|&w| w != v);
        let pos = x.binary_search(&v).unwrap_or_else(|e| e);
        x.insert(pos, v);
    }
}

/// All maximal cliques, each sorted, the list sorted lexicographically.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let p: Vec<u32> = (0..g.n() as u32).collect();
    bron_kerbosch(g, &mut Vec::new(), p, Vec::new(), &mut out);
    out.sort();
    out
}

/// Vertices are the maximal cliques of `g`; two are adjacent when they
/// share a vertex.
pub fn clique_graph(g: &Graph) -> Graph {
    let cliques = maximal_cliques(g);
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (ci, c) in cliques.iter().enumerate() {
        for &v in c {
            containing[v].push(ci);
        }
    }
    let mut edges = Vec::new();
    for list in &containing {
        for (x, &a) in list.iter().enumerate() {
            for &b in &list[x + 1..] {
                edges.push((a, b));
            }
        }
    }
    let labels = cliques
        .iter()
        .map(|c| VertexLabel::Clique(c.iter().map(|&v| v as u32).collect()))
        .collect();
    Graph::from_edges(cliques.len(), edges)
        .expect("clique graph is simple")
        .with_labels(labels)
        .expect("one label per clique")
}

/// Vertices are the edges of `g` (in sorted order); two are adjacent when
/// they share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (ei, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(ei);
        incident[v].push(ei);
    }
    let mut lg_edges = Vec::new();
    for list in &incident {
        for (x, &a) in list.iter().enumerate() {
            for &b in &list[x + 1..] {
                lg_edges.push((a, b));
            }
        }
    }
    let labels = edges
        .iter()
        .map(|&(u, v)| VertexLabel::Edge(u as u32, v as u32))
        .collect();
    Graph::from_edges(edges.len(), lg_edges)
        .expect("line graph is simple")
        .with_labels(labels)
        .expect("one label per edge")
}
