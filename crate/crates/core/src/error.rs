use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the construction and verification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be an odd prime (got {0})")]
    InvalidPrime(u64),

    #[error("p = {p} is outside the supported range 3..={max}")]
    UnsupportedPrime { p: u64, max: u64 },

    #[error("{t} is not a primitive root modulo {p}")]
    InvalidPrimitiveRoot { p: u32, t: u32 },

    #[error("generator images {img_a} and {img_b} do not define an automorphism: {reason}")]
    InvalidAutomorphism {
        img_a: String,
        img_b: String,
        reason: String,
    },

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("bound exceeded: {what} grew past {bound}")]
    BoundExceeded { what: String, bound: usize },

    #[error("set is not invariant under the group: {0}")]
    NotInvariant(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("bad partition: {0}")]
    BadPartition(String),

    #[error("permutation is not a graph automorphism: {0}")]
    NotGraphAutomorphism(String),

    #[error("group is not contained in the automorphism group: {0}")]
    NotAutomorphismGroup(String),

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("graph has no {0}-arcs")]
    NoSArcs(usize),

    #[error("clique/coset mismatch: {0}")]
    MismatchWitness(String),

    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("permutation does not preserve the clique set: {0}")]
    NotCliquePreserving(String),

    #[error("prerequisite failed: {0}")]
    Prerequisite(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
