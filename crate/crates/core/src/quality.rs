//! Behavioral quality measures: like-mindedness and the homophily ratio.

use crate::behavior::SimMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Sum of `sim(u, v)` over the unordered pairs inside each community, and the pair count.
pub fn intra_community_sums(s: &SimMatrix, p: &Partition) -> (f64, u64) {
    let mut sum = 0.0;
    let mut pairs = 0u64;
    for members in p.communities() {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                sum += s.get(u, v);
            }
        }
        let k = members.len() as u64;
        pairs += k * k.saturating_sub(1) / 2;
    }
    (sum, pairs)
}

/// Mean similarity over intra-community pairs `u < v`.
///
/// Self-pairs are excluded; a partition without any intra-community pair
/// (all singletons) scores 0.
pub fn like_mindedness(s: &SimMatrix, p: &Partition) -> Result<f64> {
    if s.size() != p.node_count() {
        return Err(Error::SizeMismatch { left: s.size(), right: p.node_count() });
    }
    let (sum, pairs) = intra_community_sums(s, p);
    Ok(if pairs == 0 { 0.0 } else { sum / pairs as f64 })
}

/// Mean similarity of adjacent pairs divided by that of non-adjacent pairs.
pub fn homophily_ratio(g: &Graph, s: &SimMatrix) -> Result<f64> {
    let n = g.node_count();
    if s.size() != n {
        return Err(Error::SizeMismatch { left: s.size(), right: n });
    }
    let edges = g.edge_count() as u64;
    if edges == 0 {
        return Err(Error::EdgelessGraph);
    }
    let all_pairs = (n as u64) * (n as u64 - 1) / 2;
    let non_edges = all_pairs - edges;
    if non_edges == 0 {
        return Err(Error::CompleteGraph);
    }
    // Sums of deviations from one reference value: a constant matrix then
    // gives both means exactly equal to it.
    let reference = s.get(0, 1);
    let (mut edge_sum, mut non_edge_sum) = (0.0, 0.0);
    for u in 0..n {
        let mut adjacent = g.neighbors(u).iter().copied().filter(|&v| v > u).peekable();
        for v in u + 1..n {
            if adjacent.peek() == Some(&v) {
                adjacent.next();
                edge_sum += s.get(u, v) - reference;
            } else {
                non_edge_sum += s.get(u, v) - reference;
            }
        }
    }
    let non_edge_mean = reference + non_edge_sum / non_edges as f64;
    if non_edge_mean == 0.0 {
        return Err(Error::ZeroNonEdgeSimilarity);
    }
    Ok((reference + edge_sum / edges as f64) / non_edge_mean)
}
