use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A graph must have at least one node.
    EmptyGraph,
    NodeOutOfRange { node: usize, node_count: usize },
    UnknownLabel(String),
    DimensionMismatch { left: usize, right: usize },
    SizeMismatch { left: usize, right: usize },
    /// Vector entry outside the range allowed by its kind.
    InvalidEntry { node: usize, index: usize, value: f64 },
    InvalidSimilarity { index: usize, value: f64 },
    /// Modularity and the homophily ratio need at least one edge.
    EdgelessGraph,
    /// Homophily ratio needs at least one non-adjacent pair.
    CompleteGraph,
    ZeroNonEdgeSimilarity,
    InvalidPartition(&'static str),
    CommunityMismatch { node: usize, community: usize },
    UnknownCommunity(usize),
    InvalidSets(&'static str),
    InactiveCommunity(usize),
    LevelOutOfRange { k: usize, min: usize, max: usize },
    InvalidRating { user: String, item: String, rating: u8 },
    InvalidThreshold(&'static str),
    UnknownAlgorithm(String),
    MissingVectors(String),
    MissingStructure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph has no nodes"),
            Error::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range for {node_count} nodes")
            }
            Error::UnknownLabel(label) => write!(f, "unknown node label `{label}`"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "vector dimensions differ: {left} vs {right}")
            }
            Error::SizeMismatch { left, right } => write!(f, "sizes differ: {left} vs {right}"),
            Error::InvalidEntry { node, index, value } => {
                write!(f, "invalid vector entry {value} at node {node}, index {index}")
            }
            Error::InvalidSimilarity { index, value } => {
                write!(f, "invalid similarity {value} at position {index}")
            }
            Error::EdgelessGraph => write!(f, "graph has no edges"),
            Error::CompleteGraph => write!(f, "graph has no non-adjacent pairs"),
            Error::ZeroNonEdgeSimilarity => {
                write!(f, "mean similarity over non-adjacent pairs is zero")
            }
            Error::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            Error::CommunityMismatch { node, community } => {
                write!(f, "node {node} is not in community {community}")
            }
            Error::UnknownCommunity(c) => write!(f, "unknown community {c}"),
            Error::InvalidSets(why) => write!(f, "invalid node sets: {why}"),
            Error::InactiveCommunity(c) => write!(f, "community {c} is not active"),
            Error::LevelOutOfRange { k, min, max } => {
                write!(f, "community count {k} outside {min}..={max}")
            }
            Error::InvalidRating { user, item, rating } => {
                write!(f, "rating {rating} by `{user}` on `{item}` is outside 1..=5")
            }
            Error::InvalidThreshold(name) => write!(f, "threshold `{name}` must be at least 1"),
            Error::UnknownAlgorithm(code) => write!(f, "unknown algorithm code `{code}`"),
            Error::MissingVectors(code) => {
                write!(f, "algorithm `{code}` needs behavioral vectors that were not supplied")
            }
            Error::MissingStructure(code) => {
                write!(f, "algorithm `{code}` needs a graph with at least one edge")
            }
        }
    }
}

impl core::error::Error for Error {}
