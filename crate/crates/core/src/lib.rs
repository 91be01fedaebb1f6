//! Certified decycling of 3-free digraphs.
//!
//! A digraph is *3-free* when it has no directed cycle of length at most
//! three. For such graphs the decycler removes a set `X` of edges that leaves
//! the graph acyclic with `|X| <= 0.8616 * gamma(G)`, where `gamma(G)` counts
//! unordered pairs of nonadjacent vertices, and emits a certificate that can
//! be checked independently of the run that produced it.
//!
//! Modules:
//! - [`digraph`]: the graph type and structural predicates.
//! - [`family`]: seeded generators of 3-free test corpora.
//! - [`stats`]: pivot neighbourhoods, partitions and their counts.
//! - [`decycler`]: the recursive decycling procedure and certificate verifier.
//! - [`exact`]: exact minimum feedback arc set for small graphs.
//! - [`mu`]: numeric certification of the margin parameter.
//! - [`edgelist`]: the plain-text edge-list interchange format.

pub mod decycler;
pub mod digraph;
pub mod edgelist;
pub mod error;
pub mod exact;
pub mod family;
pub mod mu;
pub mod stats;

pub use decycler::{decycle, verify_certificate, DecycleConfig, DecyclingCertificate};
pub use digraph::{Digraph, Edge, FreenessWitness};
pub use error::{DecycleError, ExactError, FamilyError, GraphError, MuError};
pub use family::FamilySpec;
