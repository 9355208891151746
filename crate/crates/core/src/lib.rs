//! Exact verification toolkit for the 2-distance-transitive normal Cayley
//! graphs `Cay(G, S)` on the extraspecial group `G` of order `p³` and
//! exponent `p`, with `S = {a^i, b^i}`.
//!
//! The crate builds `Γ = Cay(G, S)`, its clique graph `Σ`, the quotient of
//! `Γ` by the centre, and checks their symmetry properties by exhaustive
//! computation with permutation groups.

pub mod aut_search;
pub mod cayley;
pub mod coset;
pub mod error;
pub mod graph;
pub mod group;
pub mod perm;
pub mod report;
pub mod symmetry;

pub use aut_search::{automorphism_group, refine, vertex_stabilizer_in_aut, ColoredPartition};
pub use cayley::{build_cayley, CayleyContext};
pub use coset::{build_coset_graph, CosetFamily, CosetGraph, CosetVertex};
pub use error::{Error, Result};
pub use graph::Graph;
pub use group::{GroupAutomorphism, GroupElement, GroupParams};
pub use perm::{PermGroup, Permutation};
pub use report::{run_suite, SuiteConfig, VerificationReport};
pub use symmetry::CheckResult;
