use serde::{Deserialize, Serialize};

use super::{Graph, VertexLabel};
use crate::error::{Error, Result};

/// Quotient by a vertex partition. Edges inside a block do not produce
/// loops; they are listed in `intra_block_edges` instead.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub graph: Graph,
    pub blocks: Vec<Vec<usize>>,
    /// `block_of[v]` is the index of the block containing `v`.
    pub block_of: Vec<usize>,
    pub intra_block_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverViolation {
    /// An edge with both ends in one block.
    BlockNotIndependent { block: usize, edge: (usize, usize) },
    /// Two adjacent blocks whose induced bipartite graph is not a perfect
    /// matching.
    NotPerfectMatching {
        blocks: (usize, usize),
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub is_cover: bool,
    pub violation: Option<CoverViolation>,
}

fn validate_partition(n: usize, partition: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut block_of = vec![usize::MAX; n];
    for (bi, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::BadPartition(format!("block {bi} is empty")));
        }
        for &v in block {
            if v >= n {
                return Err(Error::BadPartition(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            if block_of[v] != usize::MAX {
                return Err(Error::BadPartition(format!(
                    "vertex {v} appears in blocks {} and {bi}",
                    block_of[v]
                )));
            }
            block_of[v] = bi;
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::BadPartition(format!("vertex {v} is not covered")));
    }
    Ok(block_of)
}

/// Blocks are adjacent iff some edge of `g` joins them. Vertex `i` of the
/// quotient is `partition[i]`.
pub fn quotient_graph(g: &Graph, partition: &[Vec<usize>]) -> Result<QuotientGraph> {
    let block_of = validate_partition(g.n(), partition)?;
    let mut edges = Vec::new();
    let mut intra = Vec::new();
    for (u, v) in g.edges() {
        let (bu, bv) = (block_of[u], block_of[v]);
        if bu == bv {
            intra.push((u, v));
        } else {
            edges.push((bu, bv));
        }
    }
    let labels = partition
        .iter()
        .map(|b| {
            let mut m: Vec<u32> = b.iter().map(|&v| v as u32).collect();
            m.sort_unstable();
            VertexLabel::Block(m)
        })
        .collect();
    let graph = Graph::from_edges(partition.len(), edges)?.with_labels(labels)?;
    Ok(QuotientGraph {
        graph,
        blocks: partition.to_vec(),
        block_of,
        intra_block_edges: intra,
    })
}

/// True iff every block is independent and every pair of adjacent blocks
/// induces a perfect matching. On success the degree of each vertex equals
/// the degree of its block in the quotient; this is asserted.
pub fn is_normal_cover(g: &Graph, partition: &[Vec<usize>]) -> Result<CoverCertificate> {
    let q = quotient_graph(g, partition)?;
    let fail = |violation| {
        Ok(CoverCertificate {
            is_cover: false,
            violation: Some(violation),
        })
    };
    if let Some(&(u, v)) = q.intra_block_edges.first() {
        return fail(CoverViolation::BlockNotIndependent {
            block: q.block_of[u],
            edge: (u, v),
        });
    }
    for (bi, block) in partition.iter().enumerate() {
        // each vertex of the block has exactly one neighbour in every
        // adjacent block, and adjacent blocks have equal size
        for &nb in q.graph.neighbors(bi) {
            let nb = nb as usize;
            if partition[nb].len() != block.len() {
                return fail(CoverViolation::NotPerfectMatching {
                    blocks: (bi, nb),
                    vertex: block[0],
                });
            }
            for &v in block {
                let hits = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| q.block_of[w as usize] == nb)
                    .count();
                if hits != 1 {
                    return fail(CoverViolation::NotPerfectMatching {
                        blocks: (bi, nb),
                        vertex: v,
                    });
                }
            }
        }
    }
    for v in 0..g.n() {
        if g.degree(v) != q.graph.degree(q.block_of[v]) {
            return Err(Error::InternalInvariant(format!(
                "cover accepted but vertex {v} has degree {} while its block has degree {}",
                g.degree(v),
                q.graph.degree(q.block_of[v])
            )));
        }
    }
    Ok(CoverCertificate {
        is_cover: true,
        violation: None,
    })
}
