//! Similarity-driven agglomerative clustering.

pub mod dendrogram;
pub mod merge;

pub use dendrogram::{cut, Dendrogram, Merge};
pub use merge::{agglomerate, linkage_score, lmm_agglomerate, Linkage, MergeRule, MergeState};
