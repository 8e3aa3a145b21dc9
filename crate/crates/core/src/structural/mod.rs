//! Structure-driven community detection.

pub mod betweenness;
pub mod girvan_newman;
pub mod louvain;
pub mod modified_louvain;

pub use betweenness::{edge_betweenness, BetweennessTable};
pub use girvan_newman::{girvan_newman, GirvanNewman, Removal};
pub use louvain::{louvain, louvain_with, LouvainConfig, LouvainOutcome, WorkingGraph};
pub use modified_louvain::{modified_louvain, ModifiedLouvainOutcome};
