//! Descriptive network statistics.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkStats {
    pub node_count: usize,
    pub isolated_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    pub avg_clustering_coefficient: f64,
    /// Longest shortest path inside the giant component.
    pub diameter: usize,
    /// Mean shortest-path length over node pairs of the giant component.
    pub avg_path_length: f64,
    pub giant_component_size: usize,
    pub giant_component_fraction: f64,
}

/// Local clustering coefficient of `v`; nodes of degree below 2 score 0.
pub fn clustering_coefficient(g: &Graph, v: usize) -> f64 {
    let nbrs = g.neighbors(v);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

/// `histogram[d]` is the number of nodes of degree `d`.
pub fn degree_histogram(g: &Graph) -> Vec<usize> {
    let max = (0..g.node_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut histogram = vec![0; max + 1];
    for v in 0..g.node_count() {
        histogram[g.degree(v)] += 1;
    }
    histogram
}

fn bfs_distances(g: &Graph, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

pub fn network_stats(g: &Graph) -> NetworkStats {
    let n = g.node_count();
    let isolated_count = (0..n).filter(|&v| g.degree(v) == 0).count();
    let avg_clustering_coefficient =
        (0..n).map(|v| clustering_coefficient(g, v)).sum::<f64>() / n as f64;

    // Ties for the largest component go to the one holding the smallest node.
    let components = g.connected_components();
    let giant = components
        .communities()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(&a.0)))
        .map(|(_, members)| members.clone())
        .unwrap_or_default();

    let mut diameter = 0;
    let mut distance_sum = 0u64;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &source in &giant {
        bfs_distances(g, source, &mut dist, &mut queue);
        for &target in &giant {
            if target > source {
                diameter = diameter.max(dist[target]);
                distance_sum += dist[target] as u64;
            }
        }
    }
    let giant_pairs = (giant.len() as u64) * (giant.len() as u64).saturating_sub(1) / 2;
    let avg_path_length = if giant_pairs == 0 { 0.0 } else { distance_sum as f64 / giant_pairs as f64 };

    NetworkStats {
        node_count: n,
        isolated_count,
        edge_count: g.edge_count(),
        avg_degree: 2.0 * g.edge_count() as f64 / n as f64,
        avg_clustering_coefficient,
        diameter,
        avg_path_length,
        giant_component_size: giant.len(),
        giant_component_fraction: giant.len() as f64 / n as f64,
    }
}
