//! Community detection over unweighted undirected graphs whose nodes carry
//! behavioral vectors.
//!
//! The crate is `no_std` (it needs `alloc`). Two families of algorithms live
//! here:
//!
//! * structural: [`structural::girvan_newman`], [`structural::louvain`] and
//!   [`structural::modified_louvain`], which also consumes pairwise similarity;
//! * behavioral: [`hier::agglomerate`] (single/average/complete linkage) and
//!   [`hier::lmm_agglomerate`] (like-mindedness maximization).
//!
//! Partitions are scored with [`modularity::modularity`] and
//! [`quality::like_mindedness`]. The [`pipeline`] module turns rating and
//! follow tables into graphs plus behavioral vectors, and [`sweep`] drives
//! every algorithm through the community-count range.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod behavior;
pub mod error;
pub mod graph;
pub mod hier;
pub mod modularity;
pub mod partition;
pub mod pipeline;
pub mod quality;
pub mod stats;
pub mod structural;
pub mod sweep;

pub use behavior::{cosine_similarity, matrix_cosine, BehavioralMatrix, SimMatrix, SparseVector, VectorKind};
pub use error::{Error, Result};
pub use graph::{Graph, Labels};
pub use hier::{agglomerate, cut, lmm_agglomerate, Dendrogram, Linkage, Merge};
pub use modularity::{modularity, modularity_delta, ModularityVariant, PartitionStats};
pub use partition::Partition;
pub use quality::{homophily_ratio, like_mindedness};
pub use stats::{network_stats, NetworkStats};
